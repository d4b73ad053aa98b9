#include "thermolab/unbiased.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gmpxx.h>

#include "thermolab/eig.hpp"

namespace thermolab::unbiased {

using cxd = qcore::cxd;

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Eigen::MatrixXcd fourier_matrix(Eigen::Index D) {
    Eigen::MatrixXcd F(D, D);
    const double w = 2.0 * std::numbers::pi / double(D);
    const double r = 1.0 / std::sqrt(double(D));
    for (Eigen::Index n = 0; n < D; ++n)
        for (Eigen::Index k = 0; k < D; ++k)
            F(n, k) = std::polar(r, w * double((n * k) % D));
    return F;
}

BasisFamily mub_family_prime(int p) {
    if (!is_prime(p) || p > 31)
        throw ConfigError("mub_family_prime needs a prime p <= 31");
    BasisFamily fam;
    const Eigen::Index D = p;
    fam.bases.push_back(Eigen::MatrixXcd::Identity(D, D));
    fam.labels.push_back("computational");
    if (p == 2) {
        // the quadratic Gauss-sum construction below needs odd p; the qubit
        // family is the three Pauli eigenbases
        const double r = 1.0 / std::sqrt(2.0);
        Eigen::MatrixXcd X(2, 2), Y(2, 2);
        X << r, r, r, -r;
        Y << r, r, cxd(0, r), cxd(0, -r);
        fam.bases.push_back(X);
        fam.bases.push_back(Y);
        fam.labels.push_back("sigma_x");
        fam.labels.push_back("sigma_y");
        return fam;
    }
    const double w = 2.0 * std::numbers::pi / double(p);
    const double r = 1.0 / std::sqrt(double(p));
    for (int a = 0; a < p; ++a) {
        Eigen::MatrixXcd B(D, D);
        for (int b = 0; b < p; ++b)
            for (int k = 0; k < p; ++k)
                B(k, b) = std::polar(r, w * double((a * k * k + b * k) % p));
        fam.bases.push_back(std::move(B));
        fam.labels.push_back("weyl_a" + std::to_string(a));
    }
    return fam;
}

Eigen::MatrixXcd hub_from_spectrum(const spectral::SpectralDecomposition& sd) {
    return sd.vectors * fourier_matrix(sd.dim());
}

double unbiasedness_score(const Eigen::MatrixXcd& basis_a,
                          const Eigen::MatrixXcd& basis_b) {
    if (basis_a.rows() != basis_b.rows() || basis_a.cols() != basis_b.cols())
        throw DimensionError("bases must have equal dimensions");
    const double D = double(basis_a.rows());
    Eigen::MatrixXcd G = basis_a.adjoint() * basis_b;
    return (D * G.cwiseAbs2().array() - 1.0).abs().maxCoeff();
}

qcore::ObservableSpectral build_huo(const HUOSpec& spec) {
    const Eigen::Index D = spec.basis.rows();
    if (spec.assigned_eigenvalues.size() != D)
        throw DimensionError("one eigenvalue per basis vector required");
    std::vector<Eigen::Index> order(static_cast<size_t>(D));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return spec.assigned_eigenvalues[a] < spec.assigned_eigenvalues[b];
    });
    double scale = std::max(spec.assigned_eigenvalues.cwiseAbs().maxCoeff(), 1.0);
    std::vector<double> vals;
    std::vector<Eigen::MatrixXcd> projs;
    size_t i = 0;
    while (i < order.size()) {
        size_t k = i + 1;
        const double v0 = spec.assigned_eigenvalues[order[i]];
        double acc = v0;
        while (k < order.size() &&
               spec.assigned_eigenvalues[order[k]] - v0 <= 1e-9 * scale) {
            acc += spec.assigned_eigenvalues[order[k]];
            ++k;
        }
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(D, D);
        for (size_t m = i; m < k; ++m) {
            auto col = spec.basis.col(order[m]);
            P += col * col.adjoint();
        }
        projs.push_back((0.5 * (P + P.adjoint())).eval());
        vals.push_back(acc / double(k - i));
        i = k;
    }
    Eigen::VectorXd ev = Eigen::Map<Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
    return qcore::ObservableSpectral(ev, std::move(projs));
}

std::vector<Eigen::MatrixXcd> bloch_generators(Eigen::Index D) {
    std::vector<Eigen::MatrixXcd> g;
    g.reserve(size_t(D * D - 1));
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = i + 1; j < D; ++j) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(D, D);
            m(i, j) = 1.0;
            m(j, i) = 1.0;
            g.push_back(std::move(m));
        }
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = i + 1; j < D; ++j) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(D, D);
            m(i, j) = cxd(0, -1);
            m(j, i) = cxd(0, 1);
            g.push_back(std::move(m));
        }
    for (Eigen::Index l = 1; l < D; ++l) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(D, D);
        const double c = std::sqrt(2.0 / double(l * (l + 1)));
        for (Eigen::Index i = 0; i < l; ++i) m(i, i) = c;
        m(l, l) = -c * double(l);
        g.push_back(std::move(m));
    }
    return g;
}

Eigen::VectorXd bloch_vector(const Eigen::VectorXcd& psi) {
    const Eigen::Index D = psi.size();
    auto gens = bloch_generators(D);
    Eigen::VectorXd b(D * D - 1);
    const double scale = std::sqrt(double(D) / (2.0 * double(D - 1)));
    for (size_t i = 0; i < gens.size(); ++i)
        b[Eigen::Index(i)] = scale * (psi.adjoint() * gens[i] * psi)(0, 0).real();
    return b;
}

Eigen::MatrixXd canonical_simplex(Eigen::Index D) {
    // e_k - centroid in R^D, expressed in the Helmert basis of the sum-zero
    // subspace and normalized; the Gram matrix is exactly
    // D/(D-1) delta_hk - 1/(D-1).
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D - 1, D);
    for (Eigen::Index l = 1; l < D; ++l) {
        const double c = 1.0 / std::sqrt(double(l * (l + 1)));
        for (Eigen::Index i = 0; i < l; ++i) H(l - 1, i) = c;
        H(l - 1, l) = -c * double(l);
    }
    Eigen::MatrixXd S(D - 1, D);
    const double norm = std::sqrt(double(D - 1) / double(D));
    for (Eigen::Index k = 0; k < D; ++k) {
        Eigen::VectorXd u = -Eigen::VectorXd::Ones(D) / double(D);
        u[k] += 1.0;
        S.col(k) = (H * u) / norm;
    }
    return S;
}

std::vector<Eigen::MatrixXcd> eigenspace_frames(const qcore::ObservableSpectral& obs) {
    std::vector<Eigen::MatrixXcd> frames;
    for (const auto& P : obs.projectors()) {
        HermitianEig es = eigh(P);
        const Eigen::Index D = P.rows();
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < D; ++i)
            if (es.values[i] > 0.5) ++rank;
        frames.push_back(es.vectors.rightCols(rank));
    }
    return frames;
}

namespace {

// Push overlaps with the projected states toward modulus 1/sqrt(D), then
// restore unitarity by polar projection.
void flatten_once(const Eigen::MatrixXcd& phi, Eigen::MatrixXcd& B) {
    const double invsq = 1.0 / std::sqrt(double(B.rows()));
    Eigen::MatrixXcd G = phi.adjoint() * B;  // M x D
    Eigen::MatrixXcd target = G;
    for (Eigen::Index m = 0; m < G.rows(); ++m)
        for (Eigen::Index k = 0; k < G.cols(); ++k) {
            double a = std::abs(G(m, k));
            target(m, k) = (a > 1e-300) ? G(m, k) * (invsq / a) : cxd(invsq, 0);
        }
    Eigen::MatrixXcd X = B + phi * (target - G);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    B = svd.matrixU() * svd.matrixV().adjoint();
}

double flat_residual(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& B) {
    if (phi.cols() == 0) return 0.0;
    const double invD = 1.0 / double(B.rows());
    return ((phi.adjoint() * B).cwiseAbs2().array() - invD).abs().maxCoeff();
}

Eigen::MatrixXcd random_unitary(Eigen::Index D, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd R(D, D);
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index k = 0; k < D; ++k) R(i, k) = cxd(nd(gen), nd(gen));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

std::vector<SubspaceBasisResult> simplex_unbiased_basis(
    const Eigen::MatrixXcd& states,
    const std::vector<Eigen::MatrixXcd>& subspace_frames) {
    const Eigen::Index D = states.rows();
    const Eigen::Index M = states.cols();
    if ((states.adjoint() * states - Eigen::MatrixXcd::Identity(M, M))
            .cwiseAbs()
            .maxCoeff() > 1e-8)
        throw InvalidState("input states must be orthonormal");

    std::vector<int> infeasible;
    for (size_t j = 0; j < subspace_frames.size(); ++j) {
        const Eigen::Index Dj = subspace_frames[j].cols();
        if (Dj * (Dj - 1) < M + 1) infeasible.push_back(static_cast<int>(j));
    }
    if (!infeasible.empty()) {
        std::string msg = "subspaces violating D_j(D_j-1) >= M+1:";
        for (int j : infeasible) msg += " " + std::to_string(j);
        throw InfeasibleSubspace(msg, std::move(infeasible));
    }

    std::vector<SubspaceBasisResult> out;
    for (const auto& frame : subspace_frames) {
        const Eigen::Index Dj = frame.cols();
        if (frame.rows() != D) throw DimensionError("frame/state dim mismatch");
        if ((frame.adjoint() * frame - Eigen::MatrixXcd::Identity(Dj, Dj))
                .cwiseAbs()
                .maxCoeff() > 1e-8)
            throw InvalidState("subspace frame not orthonormal");

        SubspaceBasisResult res;

        // Normalized projections of the states into this subspace, in frame
        // coordinates. States orthogonal to the subspace impose nothing.
        std::vector<Eigen::VectorXcd> proj;
        for (Eigen::Index m = 0; m < M; ++m) {
            Eigen::VectorXcd v = frame.adjoint() * states.col(m);
            double p = v.squaredNorm();
            if (p > 1e-14) proj.push_back(v / std::sqrt(p));
        }
        Eigen::MatrixXcd phi(Dj, Eigen::Index(proj.size()));
        for (size_t m = 0; m < proj.size(); ++m) phi.col(Eigen::Index(m)) = proj[m];

        // Bloch vectors of the projected states; orthogonal complement of
        // their span in R^(Dj^2-1) by rank-revealing SVD.
        const Eigen::Index nb = Dj * Dj - 1;
        Eigen::MatrixXd complement;
        if (phi.cols() == 0) {
            complement = Eigen::MatrixXd::Identity(nb, nb);
        } else {
            Eigen::MatrixXd blochs(nb, phi.cols());
            for (Eigen::Index m = 0; m < phi.cols(); ++m)
                blochs.col(m) = bloch_vector(phi.col(m));
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(blochs, Eigen::ComputeFullU);
            double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()[i] > 1e-10 * std::max(smax, 1.0)) ++rank;
            complement = svd.matrixU().rightCols(nb - rank);
        }
        if (complement.cols() < Dj - 1)
            throw InvalidState("Bloch complement too small for a simplex");

        // Canonical regular simplex mapped through the complement frame.
        res.facet_vectors = complement.leftCols(Dj - 1) * canonical_simplex(Dj);

        if (Dj == 1 || phi.cols() == 0) {
            res.basis = frame;
            res.residual = 0.0;
            res.converged = true;
            out.push_back(std::move(res));
            continue;
        }

        // Initial guess: nearest pure state of each simplex operator
        // I/Dj + sqrt((Dj-1)/Dj) V_k.gamma, polar-orthonormalized.
        auto gens = bloch_generators(Dj);
        Eigen::MatrixXcd B0(Dj, Dj);
        const double coef = std::sqrt(double(Dj - 1) / double(Dj)) / std::sqrt(2.0);
        for (Eigen::Index k = 0; k < Dj; ++k) {
            Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(Dj, Dj) / double(Dj);
            for (Eigen::Index i = 0; i < nb; ++i)
                rho += coef * res.facet_vectors(i, k) * gens[size_t(i)];
            HermitianEig es = eigh(rho);
            B0.col(k) = es.vectors.col(Dj - 1);
        }
        {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
                B0, Eigen::ComputeFullU | Eigen::ComputeFullV);
            B0 = svd.matrixU() * svd.matrixV().adjoint();
        }

        // Flattening iteration; deterministic seeded restarts if a basin
        // stalls (converges for M < Dj, see project notes on the M >= Dj
        // regime).
        const int max_iters = 20000;
        const double tol = 1e-11;
        Eigen::MatrixXcd best = B0;
        double best_res = flat_residual(phi, B0);
        int total_iters = 0;
        std::mt19937_64 gen(0x7ab5c0ffee123457ULL);
        for (int attempt = 0; attempt < 10 && best_res > tol; ++attempt) {
            Eigen::MatrixXcd B = (attempt == 0) ? B0 : random_unitary(Dj, gen);
            double prev = 1e300;
            for (int it = 0; it < max_iters; ++it) {
                flatten_once(phi, B);
                ++total_iters;
                if (it % 100 == 99) {
                    double r = flat_residual(phi, B);
                    if (r < best_res) {
                        best_res = r;
                        best = B;
                    }
                    if (r < tol) break;
                    if (prev - r < 1e-15 && r > 100 * tol) break;  // stalled
                    prev = r;
                }
            }
            double r = flat_residual(phi, B);
            if (r < best_res) {
                best_res = r;
                best = B;
            }
        }
        res.residual = best_res;
        res.converged = best_res <= 1e-10;
        res.iterations = total_iters;
        res.basis = frame * best;
        out.push_back(std::move(res));
    }
    return out;
}

TheoremConditionScan magnetization_theorem_scan(int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min || n_max > 24)
        throw ConfigError("scan range must satisfy 1 <= n_min <= n_max <= 24");
    TheoremConditionScan scan;
    for (int N = n_min; N <= n_max; ++N) {
        mpz_class bound = (mpz_class(1) << N) + 1;
        int jstar = 0;
        for (int j = N; j >= 0; j -= 2) {
            mpz_class Dj;
            mpz_bin_uiui(Dj.get_mpz_t(), static_cast<unsigned long>(N),
                         static_cast<unsigned long>((N - j) / 2));
            if (Dj * (Dj - 1) >= bound) {
                jstar = j;
                break;
            }
        }
        scan.rows.push_back({N, jstar, 2LL * jstar + 1});
    }
    double n = double(scan.rows.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : scan.rows) {
        sx += r.N;
        sy += double(r.q);
        sxx += double(r.N) * r.N;
        sxy += double(r.N) * double(r.q);
    }
    scan.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    scan.intercept = (sy - scan.slope * sx) / n;

    const int N = n_max;
    for (int j = (N % 2 == 0) ? 0 : 1; j <= N; j += 2) {
        mpz_class Dj;
        mpz_bin_uiui(Dj.get_mpz_t(), static_cast<unsigned long>(N),
                     static_cast<unsigned long>((N - j) / 2));
        double ln_ratio = std::log(Dj.get_d()) - double(N) * std::numbers::ln2;
        double h2 = 0.0;  // binary relative entropy H2(p(j)||p_mix), in bits
        double p1 = 0.5 + double(j) / (2.0 * N), p2 = 0.5 - double(j) / (2.0 * N);
        if (p1 > 0) h2 += p1 * std::log2(2.0 * p1);
        if (p2 > 0) h2 += p2 * std::log2(2.0 * p2);
        scan.large_deviation.push_back(
            {j, ln_ratio, -double(N) * h2 * std::numbers::ln2});
    }
    return scan;
}

}  // namespace thermolab::unbiased
