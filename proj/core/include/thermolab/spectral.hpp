#pragma once

#include <Eigen/Dense>

#include "thermolab/qcore.hpp"

namespace thermolab::spectral {

// Hermitian eigendecomposition, energies ascending. `degenerate` is set when
// any gap is below 1e-10 times the spectral range.
struct SpectralDecomposition {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;  // columns are |E_n>
    bool degenerate = false;

    Eigen::Index dim() const { return energies.size(); }
};

struct EnergyWindow {
    double center = 0.0;
    double width = 0.0;  // full width deltaE > 0

    bool contains(double E) const {
        return E >= center - 0.5 * width && E <= center + 0.5 * width;
    }
};

SpectralDecomposition diagonalize(const Eigen::MatrixXcd& H);

// Window centered on <H>_psi0 with width = 2 * energy standard deviation.
EnergyWindow default_window(const SpectralDecomposition& sd,
                            const qcore::PureState& psi0);

qcore::PureState evolve(const SpectralDecomposition& sd,
                        const qcore::PureState& psi0, double t);

// Caches the eigenbasis coefficients of one initial state so many times can
// be evaluated at O(D^2) each.
class Evolver {
  public:
    Evolver(const SpectralDecomposition& sd, const qcore::PureState& psi0);
    Eigen::VectorXcd state_at(double t) const;

  private:
    const SpectralDecomposition& sd_;
    Eigen::VectorXcd coeffs_;
};

// rho_DE = sum_n |c_n|^2 |E_n><E_n|. With a degenerate spectrum this dephases
// in the computed eigenbasis (no block projection); check sd.degenerate.
qcore::DensityMatrix diagonal_ensemble(const SpectralDecomposition& sd,
                                       const qcore::PureState& psi0);

qcore::DensityMatrix microcanonical_state(const SpectralDecomposition& sd,
                                          const EnergyWindow& window);

// exp(-beta H)/Z evaluated in the eigenbasis.
qcore::DensityMatrix gibbs_state(const SpectralDecomposition& sd, double beta);

double gibbs_log_partition(const SpectralDecomposition& sd, double beta);

struct LevelSpacingStats {
    std::vector<double> spacings;    // bulk consecutive gaps
    std::vector<double> gap_ratios;  // min(s_n, s_n+1)/max(s_n, s_n+1)
    double mean_gap_ratio = 0.0;
};

// Consecutive-gap statistics on the central bulk_fraction of an
// already sector-restricted spectrum. Needs >= 50 bulk levels.
LevelSpacingStats level_spacing_stats(const SpectralDecomposition& sd,
                                      double bulk_fraction = 0.5);

LevelSpacingStats level_spacing_stats(const Eigen::VectorXd& energies,
                                      double bulk_fraction = 0.5);

}  // namespace thermolab::spectral
