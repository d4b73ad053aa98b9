#include "thermolab/eth.hpp"

#include <algorithm>
#include <cmath>

#include "thermolab/eig.hpp"
#include "thermolab/parallel.hpp"
#include "thermolab/unbiased.hpp"

namespace thermolab::eth {

using cxd = qcore::cxd;

MatrixElementTable matrix_elements(const Eigen::MatrixXcd& obs,
                                   const spectral::SpectralDecomposition& sd) {
    if (obs.rows() != sd.dim()) throw DimensionError("observable/spectrum mismatch");
    MatrixElementTable t;
    t.elements = sd.vectors.adjoint() * obs * sd.vectors;
    t.elements = (0.5 * (t.elements + t.elements.adjoint())).eval();
    t.energies = sd.energies;
    return t;
}

MatrixElementTable matrix_elements(const qcore::ObservableSpectral& obs,
                                   const spectral::SpectralDecomposition& sd) {
    return matrix_elements(obs.matrix(), sd);
}

BulkStats bulk_statistics(const MatrixElementTable& table, double bulk_fraction) {
    if (bulk_fraction <= 0.0 || bulk_fraction > 1.0)
        throw ConfigError("bulk_fraction must be in (0, 1]");
    const Eigen::Index D = table.elements.rows();
    BulkStats s;
    s.bulk_count = std::max<Eigen::Index>(2, Eigen::Index(std::floor(D * bulk_fraction)));
    s.bulk_count = std::min(s.bulk_count, D);
    s.bulk_start = (D - s.bulk_count) / 2;

    std::vector<double> steps;
    steps.reserve(size_t(s.bulk_count));
    for (Eigen::Index m = s.bulk_start; m + 1 < s.bulk_start + s.bulk_count; ++m)
        steps.push_back(std::abs(table.elements(m + 1, m + 1).real() -
                                 table.elements(m, m).real()));
    std::sort(steps.begin(), steps.end());
    s.diag_step_median = steps.empty()
                             ? 0.0
                             : (steps.size() % 2 ? steps[steps.size() / 2]
                                                 : 0.5 * (steps[steps.size() / 2 - 1] +
                                                          steps[steps.size() / 2]));
    if (!steps.empty()) {
        double acc = 0.0;
        for (double v : steps) acc += v;
        s.diag_step_mean = acc / double(steps.size());
    }

    double sum2 = 0.0, sum1 = 0.0, mx = 0.0;
    long long count = 0;
    for (Eigen::Index m = s.bulk_start; m < s.bulk_start + s.bulk_count; ++m)
        for (Eigen::Index n = s.bulk_start; n < s.bulk_start + s.bulk_count; ++n) {
            if (m == n) continue;
            double a = std::abs(table.elements(m, n));
            sum2 += a * a;
            sum1 += a;
            mx = std::max(mx, a);
            ++count;
        }
    if (count > 1) {
        s.offdiag_std = std::sqrt(sum2 / double(count - 1));
        s.offdiag_mean = sum1 / double(count);
        s.offdiag_max = mx;
    }
    return s;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ConfigError("linear fit needs >= 2 points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    if (x.size() > 2)
        f.slope_stderr = std::sqrt((ss_res / double(x.size() - 2)) / (sxx - sx * sx / n));
    return f;
}

Eigen::MatrixXcd balanced_huo(const spectral::SpectralDecomposition& sd) {
    const Eigen::Index D = sd.dim();
    Eigen::MatrixXcd B = unbiased::hub_from_spectrum(sd);
    Eigen::VectorXd a(D);
    for (Eigen::Index j = 0; j < D; ++j) a[j] = (j < D / 2) ? 1.0 : -1.0;
    return B * a.cast<cxd>().asDiagonal() * B.adjoint();
}

EthReport eth_scaling(const EthScanConfig& cfg, const ObsFactory& factory) {
    if (cfg.sizes.empty()) throw ConfigError("eth_scaling needs at least one size");
    for (int L : cfg.sizes)
        if (L > 14) throw ConfigError("desk scale is L <= 14");
    if (cfg.n_dis < 1) throw ConfigError("n_dis >= 1 required");

    EthReport report;
    report.bulk_fraction = cfg.bulk_fraction;

    struct Job {
        int L;
        int realization;
    };
    std::vector<Job> jobs;
    for (int L : cfg.sizes)
        for (int r = 0; r < cfg.n_dis; ++r) jobs.push_back({L, r});
    std::vector<BulkStats> results(jobs.size());

    parallel_for_static(jobs.size(), cfg.workers, [&](size_t idx) {
        const Job& job = jobs[idx];
        models::XXZParams p = cfg.base;
        p.L = job.L;
        auto dis = models::draw_disorder(p.W, p.L, p.seed,
                                         static_cast<std::uint64_t>(job.realization));
        spectral::SpectralDecomposition sd;
        const std::vector<Eigen::Index>* sector_ptr = nullptr;
        std::vector<Eigen::Index> sector;
        if (cfg.sector_restrict) {
            int mz = (p.L % 2 == 0) ? 0 : 1;  // largest sector
            sector = models::magnetization_sector(p.L, mz);
            sd = spectral::diagonalize(models::build_xxz_sector(p, dis, mz));
            sector_ptr = &sector;
        } else {
            sd = spectral::diagonalize(models::build_xxz(p, dis));
        }
        Eigen::MatrixXcd A = factory(job.L, sd, sector_ptr);
        results[idx] = bulk_statistics(matrix_elements(A, sd), cfg.bulk_fraction);
    });

    // fixed-order reduction per size
    for (int L : cfg.sizes) {
        ScalingPoint pt;
        pt.L = L;
        double std_acc = 0.0, step_acc = 0.0;
        int n = 0;
        for (size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].L == L) {
                std_acc += results[i].offdiag_std;
                step_acc += results[i].diag_step_median;
                ++n;
            }
        pt.offdiag_std = std_acc / n;
        pt.diag_step_median = step_acc / n;
        pt.n_dis = n;
        report.points.push_back(pt);
    }

    std::vector<double> Ls, neg_ln_std, neg_ln_step;
    for (const auto& pt : report.points) {
        Ls.push_back(double(pt.L));
        neg_ln_std.push_back(-std::log(std::max(pt.offdiag_std, 1e-300)));
        neg_ln_step.push_back(-std::log(std::max(pt.diag_step_median, 1e-300)));
    }
    if (Ls.size() >= 2) {
        report.offdiag_slope = linear_fit(Ls, neg_ln_std);
        report.diag_step_slope = linear_fit(Ls, neg_ln_step);
    }
    return report;
}

ThermalizationGap thermalization_gap(const Eigen::MatrixXcd& obs,
                                     const spectral::SpectralDecomposition& sd,
                                     const qcore::PureState& psi0,
                                     const spectral::EnergyWindow& window) {
    ThermalizationGap g;
    auto de = spectral::diagonal_ensemble(sd, psi0);
    auto mc = spectral::microcanonical_state(sd, window);
    g.diagonal_ensemble_value = (de.entries() * obs).trace().real();
    g.microcanonical_value = (mc.entries() * obs).trace().real();
    g.gap = std::abs(g.diagonal_ensemble_value - g.microcanonical_value);
    return g;
}

std::vector<double> expectation_series(const Eigen::MatrixXcd& obs,
                                       const spectral::SpectralDecomposition& sd,
                                       const qcore::PureState& psi0,
                                       const std::vector<double>& times) {
    spectral::Evolver ev(sd, psi0);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd psi = ev.state_at(t);
        out.push_back((psi.adjoint() * obs * psi)(0, 0).real());
    }
    return out;
}

EquilibriumResiduals equilibrium_residuals(
    const qcore::DensityMatrix& rho, const qcore::ObservableSpectral& obs,
    const spectral::SpectralDecomposition& sd,
    std::optional<std::pair<double, double>> lambdas) {
    if (rho.dim() != obs.dim() || rho.dim() != sd.dim())
        throw DimensionError("dimension mismatch");
    const Eigen::Index D = rho.dim();

    // eigen-decomposition of the state: weights q_n, vectors |psi_n>
    HermitianEig es = eigh(rho.entries());
    Eigen::VectorXd q = es.values.cwiseMax(0.0);

    // refinement of the observable eigenspaces to an orthonormal basis |j,s>
    auto frames = unbiased::eigenspace_frames(obs);
    Eigen::MatrixXcd H = sd.vectors *
                         sd.energies.cast<cxd>().asDiagonal() *
                         sd.vectors.adjoint();

    // p(a_j) = Tr(rho A_j)
    auto dist = qcore::eigenvalue_distribution(rho, obs);

    EquilibriumResiduals r;
    r.shannon_entropy = qcore::shannon_entropy(dist);
    r.mean_energy = (rho.entries() * H).trace().real();

    // E_n(j,s) = <psi_n| P_js H |psi_n> and |D_js^(n)|^2, flattened over (j,s)
    struct Term {
        double weight;    // q_n
        double overlap2;  // |<j,s|psi_n>|^2
        cxd energy;       // E_n(j,s)
        double ln_p;      // ln p(a_j)
    };
    std::vector<Term> terms;
    terms.reserve(size_t(D * D));
    Eigen::MatrixXcd Hpsi = H * es.vectors;  // columns H|psi_n>
    for (int j = 0; j < obs.n_outcomes(); ++j) {
        const auto& F = frames[size_t(j)];
        const double pj = dist.probs[j];
        const double ln_pj = (pj > 1e-300) ? std::log(pj) : -1e9;
        Eigen::MatrixXcd ov = F.adjoint() * es.vectors;    // <j,s|psi_n>
        Eigen::MatrixXcd hv = F.adjoint() * Hpsi;          // <j,s|H|psi_n>
        for (Eigen::Index s = 0; s < F.cols(); ++s)
            for (Eigen::Index n = 0; n < D; ++n) {
                if (q[n] < 1e-14) continue;
                cxd d = ov(s, n);
                Term t;
                t.weight = q[n];
                t.overlap2 = std::norm(d);
                t.energy = std::conj(d) * hv(s, n);  // <psi_n|j,s><j,s|H|psi_n>
                t.ln_p = ln_pj;
                terms.push_back(t);
            }
    }

    for (const auto& t : terms)
        r.R1 = std::max(r.R1, 2.0 * std::abs(t.energy.imag()));

    // Second equilibrium equation: -o^2 ln p = a o^2 - b E with a = 1-lambda_N,
    // b = lambda_E. Least squares over (a, b) unless multipliers were given.
    double a, b;
    if (lambdas) {
        a = 1.0 - lambdas->first;
        b = lambdas->second;
    } else {
        // normal equations over the real and imaginary parts
        double m11 = 0, m12 = 0, m22 = 0, v1 = 0, v2 = 0;
        for (const auto& t : terms) {
            const double lhs = -t.overlap2 * t.ln_p;
            m11 += t.overlap2 * t.overlap2;
            m12 += -t.overlap2 * t.energy.real();
            m22 += std::norm(t.energy);
            v1 += lhs * t.overlap2;
            v2 += -lhs * t.energy.real();
        }
        double det = m11 * m22 - m12 * m12;
        if (std::abs(det) > 1e-300) {
            a = (v1 * m22 - v2 * m12) / det;
            b = (m11 * v2 - m12 * v1) / det;
        } else {
            // degenerate fit (e.g. constant distribution): match the entropy
            b = 0.0;
            a = r.shannon_entropy;
        }
    }
    r.lambda_N = 1.0 - a;
    r.lambda_E = b;
    for (const auto& t : terms) {
        cxd res = -t.overlap2 * t.ln_p - a * t.overlap2 + b * t.energy;
        r.R2 = std::max(r.R2, std::abs(res));
    }
    r.linear_relation_gap =
        std::abs(r.shannon_entropy - (a - b * r.mean_energy));
    return r;
}

Eigen::VectorXd dpdt_vonneumann(const qcore::DensityMatrix& rho,
                                const qcore::ObservableSpectral& obs,
                                const Eigen::MatrixXcd& H) {
    if (rho.dim() != obs.dim() || rho.dim() != H.rows())
        throw DimensionError("dimension mismatch");
    Eigen::MatrixXcd comm = H * rho.entries() - rho.entries() * H;
    Eigen::VectorXd out(obs.n_outcomes());
    for (int j = 0; j < obs.n_outcomes(); ++j)
        out[j] = (cxd(0, -1) * (comm * obs.projectors()[size_t(j)]).trace()).real();
    return out;
}

}  // namespace thermolab::eth
