#include "thermolab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "thermolab/eig.hpp"

namespace thermolab::qcore {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kEigClip = 1e-10;

void check_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b) throw DimensionError("dimension mismatch");
}
}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw InvalidState("PureState needs dim >= 1");
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > kNormTol)
        throw InvalidState("PureState not normalized: |psi|^2 = " + std::to_string(n2));
}

PureState PureState::basis_vector(Eigen::Index dim, Eigen::Index index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : rho_(std::move(entries)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
        throw InvalidState("DensityMatrix must be square");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw InvalidState("DensityMatrix not Hermitian");
    double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > kNormTol)
        throw InvalidState("DensityMatrix trace = " + std::to_string(tr));
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / double(dim));
}

ObservableSpectral::ObservableSpectral(Eigen::VectorXd distinct_eigenvalues,
                                       std::vector<Eigen::MatrixXcd> projectors)
    : eigvals_(std::move(distinct_eigenvalues)), projectors_(std::move(projectors)) {
    if (eigvals_.size() == 0 || size_t(eigvals_.size()) != projectors_.size())
        throw InvalidOperator("eigenvalue/projector count mismatch");
    for (Eigen::Index j = 1; j < eigvals_.size(); ++j)
        if (eigvals_[j] <= eigvals_[j - 1])
            throw InvalidOperator("distinct eigenvalues must be strictly increasing");
    const Eigen::Index D = projectors_.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(D, D);
    Eigen::Index total_deg = 0;
    for (const auto& P : projectors_) {
        if (P.rows() != D || P.cols() != D)
            throw DimensionError("projector dimension mismatch");
        if (((P * P) - P).cwiseAbs().maxCoeff() > 1e-10)
            throw InvalidOperator("projector not idempotent");
        sum += P;
        double d = P.trace().real();
        degen_.push_back(static_cast<Eigen::Index>(std::lround(d)));
        total_deg += degen_.back();
    }
    if ((sum - Eigen::MatrixXcd::Identity(D, D)).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidOperator("projectors do not resolve the identity");
    if (total_deg != D) throw InvalidOperator("degeneracies do not sum to dim");
}

ObservableSpectral ObservableSpectral::from_hermitian(const Eigen::MatrixXcd& op) {
    if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidOperator("observable not Hermitian");
    HermitianEig es = eigh(op);
    const Eigen::Index D = op.rows();
    double scale = std::max({std::abs(es.values[0]), std::abs(es.values[D - 1]), 1.0});
    std::vector<double> vals;
    std::vector<Eigen::MatrixXcd> projs;
    Eigen::Index j = 0;
    while (j < D) {
        Eigen::Index k = j + 1;
        while (k < D && es.values[k] - es.values[j] <= 1e-9 * scale) ++k;
        auto block = es.vectors.middleCols(j, k - j);
        projs.push_back(block * block.adjoint());
        double mean = es.values.segment(j, k - j).mean();
        vals.push_back(mean);
        j = k;
    }
    Eigen::VectorXd ev = Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
    return ObservableSpectral(ev, std::move(projs));
}

Eigen::MatrixXcd ObservableSpectral::matrix() const {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int j = 0; j < n_outcomes(); ++j) A += eigvals_[j] * projectors_[size_t(j)];
    return A;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    Eigen::VectorXcd out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()[i] * b.amplitudes();
    return PureState(std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(Eigen::kroneckerProduct(a.entries(), b.entries()).eval());
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep) {
    const Eigen::Index D = rho.dim();
    Eigen::Index prod = 1;
    for (auto d : dims) prod *= d;
    if (prod != D) throw DimensionError("subsystem dims do not factor the state");
    if (keep.empty()) throw DimensionError("keep set must be nonempty");
    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw DimensionError("keep index out of range");
        kept[size_t(k)] = true;
    }

    // Strides in the big-endian tensor ordering (subsystem 0 slowest).
    std::vector<Eigen::Index> stride(n);
    Eigen::Index s = 1;
    for (int i = n - 1; i >= 0; --i) {
        stride[size_t(i)] = s;
        s *= dims[size_t(i)];
    }
    Eigen::Index dkeep = 1, dtrace = 1;
    std::vector<int> keep_idx, trace_idx;
    for (int i = 0; i < n; ++i) {
        if (kept[size_t(i)]) {
            dkeep *= dims[size_t(i)];
            keep_idx.push_back(i);
        } else {
            dtrace *= dims[size_t(i)];
            trace_idx.push_back(i);
        }
    }

    // Map a (kept, traced) pair of multi-indices to a full-space index.
    auto unrank = [&](Eigen::Index r, const std::vector<int>& subs) {
        Eigen::Index full = 0;
        for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
            Eigen::Index d = dims[size_t(subs[size_t(i)])];
            full += (r % d) * stride[size_t(subs[size_t(i)])];
            r /= d;
        }
        return full;
    };

    std::vector<Eigen::Index> keep_off(static_cast<size_t>(dkeep));
    std::vector<Eigen::Index> trace_off(static_cast<size_t>(dtrace));
    for (Eigen::Index r = 0; r < dkeep; ++r) keep_off[size_t(r)] = unrank(r, keep_idx);
    for (Eigen::Index r = 0; r < dtrace; ++r) trace_off[size_t(r)] = unrank(r, trace_idx);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dkeep, dkeep);
    const auto& R = rho.entries();
    for (Eigen::Index i = 0; i < dkeep; ++i)
        for (Eigen::Index j = 0; j < dkeep; ++j) {
            cxd acc = 0.0;
            for (Eigen::Index t = 0; t < dtrace; ++t)
                acc += R(keep_off[size_t(i)] + trace_off[size_t(t)],
                         keep_off[size_t(j)] + trace_off[size_t(t)]);
            out(i, j) = acc;
        }
    // Re-symmetrize rounding noise so downstream invariant checks stay tight.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(out));
}

Eigen::Matrix2cd single_site_reduced(const Eigen::VectorXcd& psi, int L, int site) {
    const Eigen::Index D = psi.size();
    const Eigen::Index mask = Eigen::Index(1) << (L - 1 - site);
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (Eigen::Index i = 0; i < D; ++i) {
        int b = (i & mask) ? 1 : 0;
        r(b, b) += std::norm(psi[i]);
        if (b == 0) r(0, 1) += psi[i] * std::conj(psi[i | mask]);
    }
    r(1, 0) = std::conj(r(0, 1));
    return r;
}

double entropy_from_probs(const Eigen::VectorXd& probs) {
    double S = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        double p = probs[i];
        if (p > 1e-14) S -= p * std::log(p);
    }
    return S;
}

namespace {
Eigen::VectorXd clipped_spectrum(const DensityMatrix& rho) {
    Eigen::VectorXd ev = eigh_values(rho.entries());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < 0.0) {
            if (ev[i] < -kEigClip)
                throw InvalidState("density matrix has negative eigenvalue " +
                                   std::to_string(ev[i]));
            ev[i] = 0.0;
        }
        if (ev[i] > 1.0 && ev[i] < 1.0 + kEigClip) ev[i] = 1.0;
    }
    return ev;
}
}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_from_probs(clipped_spectrum(rho));
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
    if (alpha <= 0.0 || alpha == 1.0)
        throw ConfigError("Renyi entropy needs alpha > 0, alpha != 1");
    Eigen::VectorXd ev = clipped_spectrum(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > 0.0) s += std::pow(ev[i], alpha);
    return std::log(s) / (1.0 - alpha);
}

EigenvalueDistribution eigenvalue_distribution(const DensityMatrix& rho,
                                               const ObservableSpectral& obs) {
    check_same_dim(rho.dim(), obs.dim());
    EigenvalueDistribution d;
    d.outcomes = obs.eigenvalues();
    d.probs.resize(obs.n_outcomes());
    for (int j = 0; j < obs.n_outcomes(); ++j) {
        double p = (rho.entries() * obs.projectors()[size_t(j)]).trace().real();
        if (p < -1e-12) throw InvalidState("negative outcome probability");
        d.probs[j] = std::max(p, 0.0);
    }
    return d;
}

double shannon_entropy(const EigenvalueDistribution& dist) {
    return entropy_from_probs(dist.probs);
}

double renyi_entropy(const EigenvalueDistribution& dist, double alpha) {
    if (alpha <= 0.0 || alpha == 1.0)
        throw ConfigError("Renyi entropy needs alpha > 0, alpha != 1");
    double s = 0.0;
    for (Eigen::Index i = 0; i < dist.probs.size(); ++i)
        if (dist.probs[i] > 0.0) s += std::pow(dist.probs[i], alpha);
    return std::log(s) / (1.0 - alpha);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dim(rho.dim(), sigma.dim());
    Eigen::VectorXd ev = eigh_values(rho.entries() - sigma.entries());
    return 0.5 * ev.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dim(rho.dim(), sigma.dim());
    HermitianEig er = eigh(rho.entries());
    Eigen::VectorXd sq = er.values.cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXcd sqrt_rho =
        er.vectors * sq.asDiagonal() * er.vectors.adjoint();
    Eigen::MatrixXcd m = sqrt_rho * sigma.entries() * sqrt_rho;
    Eigen::VectorXd ev = eigh_values(m);
    double f = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > 0.0) f += std::sqrt(ev[i]);
    return f;
}

}  // namespace thermolab::qcore
