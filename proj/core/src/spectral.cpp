#include "thermolab/spectral.hpp"

#include <cmath>

#include "thermolab/eig.hpp"

namespace thermolab::spectral {

using cxd = qcore::cxd;

SpectralDecomposition diagonalize(const Eigen::MatrixXcd& H) {
    if (H.rows() != H.cols()) throw InvalidOperator("Hamiltonian must be square");
    double scale = std::max(H.cwiseAbs().maxCoeff(), 1.0);
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InvalidOperator("Hamiltonian not Hermitian");
    HermitianEig es = eigh(H);
    SpectralDecomposition sd;
    sd.energies = std::move(es.values);
    sd.vectors = std::move(es.vectors);
    const Eigen::Index D = sd.dim();
    double range = sd.energies[D - 1] - sd.energies[0];
    for (Eigen::Index n = 0; n + 1 < D; ++n)
        if (sd.energies[n + 1] - sd.energies[n] < 1e-10 * std::max(range, 1.0)) {
            sd.degenerate = true;
            break;
        }
    return sd;
}

EnergyWindow default_window(const SpectralDecomposition& sd,
                            const qcore::PureState& psi0) {
    Eigen::VectorXcd c = sd.vectors.adjoint() * psi0.amplitudes();
    double e1 = 0.0, e2 = 0.0;
    for (Eigen::Index n = 0; n < sd.dim(); ++n) {
        double p = std::norm(c[n]);
        e1 += p * sd.energies[n];
        e2 += p * sd.energies[n] * sd.energies[n];
    }
    double var = std::max(e2 - e1 * e1, 0.0);
    return EnergyWindow{e1, 2.0 * std::sqrt(var)};
}

qcore::PureState evolve(const SpectralDecomposition& sd,
                        const qcore::PureState& psi0, double t) {
    if (psi0.dim() != sd.dim()) throw DimensionError("state/spectrum dim mismatch");
    return qcore::PureState(Evolver(sd, psi0).state_at(t));
}

Evolver::Evolver(const SpectralDecomposition& sd, const qcore::PureState& psi0)
    : sd_(sd), coeffs_(sd.vectors.adjoint() * psi0.amplitudes()) {
    if (psi0.dim() != sd.dim()) throw DimensionError("state/spectrum dim mismatch");
}

Eigen::VectorXcd Evolver::state_at(double t) const {
    Eigen::VectorXcd phased(coeffs_.size());
    for (Eigen::Index n = 0; n < coeffs_.size(); ++n)
        phased[n] = coeffs_[n] * std::polar(1.0, -sd_.energies[n] * t);
    return sd_.vectors * phased;
}

qcore::DensityMatrix diagonal_ensemble(const SpectralDecomposition& sd,
                                       const qcore::PureState& psi0) {
    if (psi0.dim() != sd.dim()) throw DimensionError("state/spectrum dim mismatch");
    Eigen::VectorXcd c = sd.vectors.adjoint() * psi0.amplitudes();
    Eigen::VectorXd w = c.cwiseAbs2();
    w /= w.sum();
    Eigen::MatrixXcd rho =
        sd.vectors * w.cast<cxd>().asDiagonal() * sd.vectors.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return qcore::DensityMatrix(std::move(rho));
}

qcore::DensityMatrix microcanonical_state(const SpectralDecomposition& sd,
                                          const EnergyWindow& window) {
    std::vector<Eigen::Index> in;
    for (Eigen::Index n = 0; n < sd.dim(); ++n)
        if (window.contains(sd.energies[n])) in.push_back(n);
    if (in.empty()) throw EmptyWindow("no eigenvalues inside the energy window");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sd.dim(), sd.dim());
    const double w = 1.0 / double(in.size());
    for (Eigen::Index n : in) {
        auto v = sd.vectors.col(n);
        rho += w * (v * v.adjoint());
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return qcore::DensityMatrix(std::move(rho));
}

namespace {
Eigen::VectorXd gibbs_weights(const SpectralDecomposition& sd, double beta) {
    // shift by the smallest weight exponent for stability at large beta
    double ref = (beta >= 0.0) ? sd.energies[0] : sd.energies[sd.dim() - 1];
    Eigen::VectorXd w(sd.dim());
    for (Eigen::Index n = 0; n < sd.dim(); ++n)
        w[n] = std::exp(-beta * (sd.energies[n] - ref));
    return w;
}
}  // namespace

qcore::DensityMatrix gibbs_state(const SpectralDecomposition& sd, double beta) {
    if (!std::isfinite(beta)) throw ConfigError("beta must be finite");
    Eigen::VectorXd w = gibbs_weights(sd, beta);
    w /= w.sum();
    Eigen::MatrixXcd rho =
        sd.vectors * w.cast<cxd>().asDiagonal() * sd.vectors.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return qcore::DensityMatrix(std::move(rho));
}

double gibbs_log_partition(const SpectralDecomposition& sd, double beta) {
    double ref = (beta >= 0.0) ? sd.energies[0] : sd.energies[sd.dim() - 1];
    double s = 0.0;
    for (Eigen::Index n = 0; n < sd.dim(); ++n)
        s += std::exp(-beta * (sd.energies[n] - ref));
    return std::log(s) - beta * ref;
}

LevelSpacingStats level_spacing_stats(const SpectralDecomposition& sd,
                                      double bulk_fraction) {
    return level_spacing_stats(sd.energies, bulk_fraction);
}

LevelSpacingStats level_spacing_stats(const Eigen::VectorXd& energies,
                                      double bulk_fraction) {
    if (bulk_fraction <= 0.0 || bulk_fraction > 1.0)
        throw ConfigError("bulk_fraction must be in (0, 1]");
    const Eigen::Index D = energies.size();
    const Eigen::Index nbulk = static_cast<Eigen::Index>(std::floor(D * bulk_fraction));
    if (nbulk < 50)
        throw InsufficientSpectrum("need >= 50 bulk levels for spacing statistics");
    const Eigen::Index start = (D - nbulk) / 2;
    LevelSpacingStats out;
    out.spacings.reserve(size_t(nbulk - 1));
    for (Eigen::Index n = start; n + 1 < start + nbulk; ++n)
        out.spacings.push_back(energies[n + 1] - energies[n]);
    double acc = 0.0;
    for (size_t i = 0; i + 1 < out.spacings.size(); ++i) {
        double a = out.spacings[i], b = out.spacings[i + 1];
        double hi = std::max(a, b);
        double r = (hi > 0.0) ? std::min(a, b) / hi : 1.0;
        out.gap_ratios.push_back(r);
        acc += r;
    }
    if (out.gap_ratios.empty())
        throw InsufficientSpectrum("not enough spacings for gap ratios");
    out.mean_gap_ratio = acc / double(out.gap_ratios.size());
    return out;
}

}  // namespace thermolab::spectral
