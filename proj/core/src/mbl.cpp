#include "thermolab/mbl.hpp"

#include <cmath>

#include "thermolab/eig.hpp"
#include "thermolab/parallel.hpp"
#include "thermolab/spectral.hpp"

namespace thermolab::mbl {

using cxd = qcore::cxd;

TimeGrid TimeGrid::logspace(double tmin, double tmax, int n) {
    if (!(tmin > 0.0) || tmax <= tmin || n < 2)
        throw ConfigError("log grid needs 0 < tmin < tmax and n >= 2");
    TimeGrid g;
    g.spacing = Spacing::log;
    const double step = std::log(tmax / tmin) / (n - 1);
    for (int i = 0; i < n; ++i) g.points.push_back(tmin * std::exp(step * i));
    return g;
}

TimeGrid TimeGrid::linspace(double tmin, double tmax, int n) {
    if (tmax <= tmin || n < 2)
        throw ConfigError("linear grid needs tmin < tmax and n >= 2");
    TimeGrid g;
    g.spacing = Spacing::linear;
    const double step = (tmax - tmin) / (n - 1);
    for (int i = 0; i < n; ++i) g.points.push_back(tmin + step * i);
    return g;
}

TimeGrid TimeGrid::log_default() { return logspace(1e-1, 1e3, 200); }

qcore::PureState initial_state(int L, InitialState which) {
    switch (which) {
        case InitialState::neel_x: return models::neel_state(L, models::Axis::x);
        case InitialState::neel_y: return models::neel_state(L, models::Axis::y);
        case InitialState::neel_z: return models::neel_state(L, models::Axis::z);
    }
    throw ConfigError("unknown initial state");
}

namespace {

void check_budget(const RunConfig& cfg) {
    const std::uint64_t D = 1ull << cfg.params.L;
    // Hamiltonian + eigenvectors + workspace, complex doubles
    const std::uint64_t need = 3ull * D * D * sizeof(cxd);
    if (need > cfg.memory_budget_bytes)
        throw ResourceError("2^L exceeds the configured memory budget");
    if (cfg.params.L > 14) throw ResourceError("desk scale is L <= 14");
    if (cfg.n_dis < 1) throw ConfigError("n_dis >= 1 required");
}

// Collects per-realization series and reduces them in index order, so the
// result is independent of the worker count.
struct SeriesAccumulator {
    std::vector<Eigen::MatrixXd> per_realization;

    explicit SeriesAccumulator(size_t n) : per_realization(n) {}

    DisorderAveragedSeries reduce(const TimeGrid& grid,
                                  std::vector<std::string> columns, int n_dis,
                                  std::uint64_t seed) const {
        DisorderAveragedSeries s;
        s.times = grid.points;
        s.columns = std::move(columns);
        s.n_dis = n_dis;
        s.seed = seed;
        const Eigen::Index rows = per_realization.front().rows();
        const Eigen::Index cols = per_realization.front().cols();
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, cols);
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(rows, cols);  // Kahan
        for (const auto& m : per_realization) {
            Eigen::MatrixXd y = m - comp;
            Eigen::MatrixXd t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        s.mean = sum / double(n_dis);
        Eigen::MatrixXd var = Eigen::MatrixXd::Zero(rows, cols);
        for (const auto& m : per_realization)
            var += (m - s.mean).cwiseAbs2();
        if (n_dis > 1)
            s.stderr_ =
                (var / double(n_dis - 1)).cwiseSqrt() / std::sqrt(double(n_dis));
        else
            s.stderr_ = Eigen::MatrixXd::Zero(rows, cols);
        return s;
    }
};

}  // namespace

MagnetizationRun local_magnetization_run(const RunConfig& cfg, models::Axis axis) {
    check_budget(cfg);
    const int L = cfg.params.L;
    const int nt = static_cast<int>(cfg.grid.points.size());
    SeriesAccumulator site_acc(size_t(cfg.n_dis));
    const qcore::PureState psi0 = models::neel_state(L, axis);
    const Eigen::Index mask_base = Eigen::Index(1) << (L - 1);

    parallel_for_static(size_t(cfg.n_dis), cfg.workers, [&](size_t r) {
        auto dis = models::draw_disorder(cfg.params.W, L, cfg.seed, r);
        auto sd = spectral::diagonalize(models::build_xxz(cfg.params, dis));
        spectral::Evolver ev(sd, psi0);
        Eigen::MatrixXd vals(nt, L);
        for (int it = 0; it < nt; ++it) {
            Eigen::VectorXcd psi = ev.state_at(cfg.grid.points[size_t(it)]);
            for (int i = 0; i < L; ++i) {
                const Eigen::Index mask = mask_base >> i;
                double m = 0.0;
                switch (axis) {
                    case models::Axis::z:
                        for (Eigen::Index s = 0; s < psi.size(); ++s)
                            m += ((s & mask) ? -1.0 : 1.0) * std::norm(psi[s]);
                        break;
                    case models::Axis::x:
                        for (Eigen::Index s = 0; s < psi.size(); ++s)
                            m += 2.0 * ((s & mask) ? 0.0
                                                   : (std::conj(psi[s]) * psi[s | mask])
                                                         .real());
                        break;
                    case models::Axis::y:
                        for (Eigen::Index s = 0; s < psi.size(); ++s)
                            m += 2.0 * ((s & mask) ? 0.0
                                                   : (std::conj(psi[s]) * psi[s | mask])
                                                         .imag());
                        break;
                }
                vals(it, i) = m;
            }
        }
        site_acc.per_realization[r] = std::move(vals);
    });

    MagnetizationRun run;
    std::vector<std::string> cols;
    for (int i = 0; i < L; ++i) cols.push_back("site" + std::to_string(i));
    run.per_site = site_acc.reduce(cfg.grid, std::move(cols), cfg.n_dis, cfg.seed);

    run.staggered.times = run.per_site.times;
    run.staggered.columns = {"m_s"};
    run.staggered.n_dis = cfg.n_dis;
    run.staggered.seed = cfg.seed;
    run.staggered.mean.resize(nt, 1);
    run.staggered.stderr_.resize(nt, 1);
    for (int it = 0; it < nt; ++it) {
        double acc = 0.0, err2 = 0.0;
        for (int i = 0; i < L; ++i) {
            const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
            acc += sgn * run.per_site.mean(it, i);
            err2 += run.per_site.stderr_(it, i) * run.per_site.stderr_(it, i);
        }
        run.staggered.mean(it, 0) = acc / L;
        run.staggered.stderr_(it, 0) = std::sqrt(err2) / L;
    }
    return run;
}

EntropyRun local_entropies_run(const RunConfig& cfg, InitialState which) {
    check_budget(cfg);
    const int L = cfg.params.L;
    const int nt = static_cast<int>(cfg.grid.points.size());
    const qcore::PureState psi0 = initial_state(L, which);
    SeriesAccumulator acc(size_t(cfg.n_dis));

    parallel_for_static(size_t(cfg.n_dis), cfg.workers, [&](size_t r) {
        auto dis = models::draw_disorder(cfg.params.W, L, cfg.seed, r);
        auto sd = spectral::diagonalize(models::build_xxz(cfg.params, dis));
        spectral::Evolver ev(sd, psi0);
        Eigen::MatrixXd vals(nt, L);
        for (int it = 0; it < nt; ++it) {
            Eigen::VectorXcd psi = ev.state_at(cfg.grid.points[size_t(it)]);
            for (int n = 0; n < L; ++n) {
                Eigen::Matrix2cd rho = qcore::single_site_reduced(psi, L, n);
                // 2x2 spectrum in closed form
                double a = rho(0, 0).real(), d = rho(1, 1).real();
                double od = std::abs(rho(0, 1));
                double tr = a + d;
                double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) / 4 + od * od));
                double l1 = tr / 2 + disc, l2 = tr / 2 - disc;
                double S = 0.0;
                if (l1 > 1e-14) S -= l1 * std::log(l1);
                if (l2 > 1e-14) S -= l2 * std::log(l2);
                vals(it, n) = S;
            }
        }
        acc.per_realization[r] = std::move(vals);
    });

    EntropyRun run;
    std::vector<std::string> cols;
    for (int i = 0; i < L; ++i) cols.push_back("S" + std::to_string(i));
    run.per_site = acc.reduce(cfg.grid, std::move(cols), cfg.n_dis, cfg.seed);

    auto aggregate = [&](double scale, const std::string& name) {
        DisorderAveragedSeries s;
        s.times = run.per_site.times;
        s.columns = {name};
        s.n_dis = cfg.n_dis;
        s.seed = cfg.seed;
        s.mean.resize(nt, 1);
        s.stderr_.resize(nt, 1);
        for (int it = 0; it < nt; ++it) {
            double m = 0.0, e2 = 0.0;
            for (int i = 0; i < L; ++i) {
                m += run.per_site.mean(it, i);
                e2 += run.per_site.stderr_(it, i) * run.per_site.stderr_(it, i);
            }
            s.mean(it, 0) = m * scale;
            s.stderr_(it, 0) = std::sqrt(e2) * scale;
        }
        return s;
    };
    run.average = aggregate(1.0 / L, "S_avg");
    run.total = aggregate(1.0, "T");
    return run;
}

DisorderAveragedSeries halfchain_entropy_run(const RunConfig& cfg,
                                             InitialState which) {
    if (cfg.params.L % 2 != 0)
        throw ConfigError("half-chain entropy needs even L");
    check_budget(cfg);
    const int L = cfg.params.L;
    const int half = L / 2;
    const Eigen::Index dA = Eigen::Index(1) << half;
    const int nt = static_cast<int>(cfg.grid.points.size());
    const qcore::PureState psi0 = initial_state(L, which);
    SeriesAccumulator acc(size_t(cfg.n_dis));

    parallel_for_static(size_t(cfg.n_dis), cfg.workers, [&](size_t r) {
        auto dis = models::draw_disorder(cfg.params.W, L, cfg.seed, r);
        auto sd = spectral::diagonalize(models::build_xxz(cfg.params, dis));
        spectral::Evolver ev(sd, psi0);
        Eigen::MatrixXd vals(nt, 1);
        for (int it = 0; it < nt; ++it) {
            Eigen::VectorXcd psi = ev.state_at(cfg.grid.points[size_t(it)]);
            // psi as dA x dB matrix (left half = slow index); entanglement
            // spectrum from its singular values
            Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>
                m(psi.data(), dA, dA);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            double S = 0.0;
            for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
                double p = svd.singularValues()[i] * svd.singularValues()[i];
                if (p > 1e-14) S -= p * std::log(p);
            }
            vals(it, 0) = S;
        }
        acc.per_realization[r] = std::move(vals);
    });
    return acc.reduce(cfg.grid, {"S_half"}, cfg.n_dis, cfg.seed);
}

LogFitResult log_modulation_fit(const std::vector<double>& times,
                                const std::vector<double>& values, double tmin,
                                double tmax) {
    if (times.size() != values.size() || times.size() < 8)
        throw ConfigError("series too short for a log-modulation fit");
    std::vector<double> t, v;
    for (size_t i = 0; i < times.size(); ++i)
        if (times[i] >= tmin && times[i] <= tmax) {
            t.push_back(times[i]);
            v.push_back(values[i]);
        }
    if (t.size() < 8 || t.back() / t.front() < 100.0)
        throw InsufficientStructure(
            "need a log-spaced window spanning >= 2 decades");

    // centered box smoothing, width 5 (shrinks at the edges)
    const int w = 2;
    std::vector<double> sm(v.size());
    for (int i = 0; i < int(v.size()); ++i) {
        int lo = std::max(0, i - w), hi = std::min(int(v.size()) - 1, i + w);
        double s = 0.0;
        for (int k = lo; k <= hi; ++k) s += v[size_t(k)];
        sm[size_t(i)] = s / (hi - lo + 1);
    }

    LogFitResult fit;
    for (int i = 1; i + 1 < int(sm.size()); ++i)
        if (sm[size_t(i)] < sm[size_t(i - 1)] && sm[size_t(i)] < sm[size_t(i + 1)]) {
            fit.minima_times.push_back(t[size_t(i)]);
            fit.minima_values.push_back(sm[size_t(i)]);
        }
    if (fit.minima_values.size() < 4)
        throw InsufficientStructure("fewer than 4 local minima in the window");

    const size_t n = fit.minima_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        double x = std::log(fit.minima_times[i]);
        sx += x;
        sy += fit.minima_values[i];
        sxx += x * x;
        sxy += x * fit.minima_values[i];
    }
    const double dn = double(n);
    fit.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ss_res = 0, ss_tot = 0, ybar = sy / dn;
    for (size_t i = 0; i < n; ++i) {
        double x = std::log(fit.minima_times[i]);
        double e = fit.minima_values[i] - (fit.intercept + fit.slope * x);
        ss_res += e * e;
        ss_tot += (fit.minima_values[i] - ybar) * (fit.minima_values[i] - ybar);
    }
    fit.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double window_average(const DisorderAveragedSeries& series, int column,
                      double tmin, double tmax) {
    double acc = 0.0;
    int n = 0;
    for (size_t i = 0; i < series.times.size(); ++i)
        if (series.times[i] >= tmin && series.times[i] <= tmax) {
            acc += series.mean(Eigen::Index(i), column);
            ++n;
        }
    if (n == 0) throw EmptyWindow("no grid points inside the window");
    return acc / n;
}

}  // namespace thermolab::mbl
