#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "thermolab/models.hpp"
#include "thermolab/qcore.hpp"
#include "thermolab/spectral.hpp"

namespace thermolab::eth {

// Matrix elements A_mn = <E_m|A|E_n> of an observable in the energy basis.
struct MatrixElementTable {
    Eigen::MatrixXcd elements;
    Eigen::VectorXd energies;
};

MatrixElementTable matrix_elements(const Eigen::MatrixXcd& obs,
                                   const spectral::SpectralDecomposition& sd);
MatrixElementTable matrix_elements(const qcore::ObservableSpectral& obs,
                                   const spectral::SpectralDecomposition& sd);

// Diagonal-step and off-diagonal statistics over the central bulk_fraction
// of the spectrum.
struct BulkStats {
    Eigen::Index bulk_start = 0;
    Eigen::Index bulk_count = 0;
    double diag_step_median = 0.0;
    double diag_step_mean = 0.0;
    double offdiag_std = 0.0;   // sample std of A_mn, m != n, about zero mean
    double offdiag_mean = 0.0;  // mean |A_mn|
    double offdiag_max = 0.0;
};

BulkStats bulk_statistics(const MatrixElementTable& table, double bulk_fraction);

struct ScalingPoint {
    int L = 0;
    double offdiag_std = 0.0;      // disorder-averaged
    double diag_step_median = 0.0; // disorder-averaged
    int n_dis = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Per-size bulk statistics plus the fits of -ln(offdiag std) and
// -ln(diag step median) against L.
struct EthReport {
    std::vector<ScalingPoint> points;
    LinearFit offdiag_slope;
    LinearFit diag_step_slope;
    double bulk_fraction = 0.5;
};

struct EthScanConfig {
    models::XXZParams base;   // L overridden by `sizes`
    std::vector<int> sizes;
    int n_dis = 1;
    double bulk_fraction = 0.5;
    // restrict to the largest magnetization sector (valid only for
    // observables commuting with M_z)
    bool sector_restrict = false;
    unsigned workers = 1;
};

// Builds the observable for one scan point. `sector` is nullptr unless
// sector_restrict is set, in which case the observable must be expressed in
// that sector basis.
using ObsFactory = std::function<Eigen::MatrixXcd(
    int L, const spectral::SpectralDecomposition& sd,
    const std::vector<Eigen::Index>* sector)>;

EthReport eth_scaling(const EthScanConfig& cfg, const ObsFactory& factory);

// Balanced +/-1 observable diagonal in the Fourier HUB of the spectrum.
Eigen::MatrixXcd balanced_huo(const spectral::SpectralDecomposition& sd);

// |<A>_DE - <A>_mc| for one initial state; also returns the two values.
struct ThermalizationGap {
    double gap = 0.0;
    double diagonal_ensemble_value = 0.0;
    double microcanonical_value = 0.0;
};

ThermalizationGap thermalization_gap(const Eigen::MatrixXcd& obs,
                                     const spectral::SpectralDecomposition& sd,
                                     const qcore::PureState& psi0,
                                     const spectral::EnergyWindow& window);

// <A>(t) along the unitary trajectory, for plotting next to the gap.
std::vector<double> expectation_series(const Eigen::MatrixXcd& obs,
                                       const spectral::SpectralDecomposition& sd,
                                       const qcore::PureState& psi0,
                                       const std::vector<double>& times);

// Maximum-entropy equilibrium residuals for an observable (refined to an
// orthonormal eigenbasis |j,s>) against a state and Hamiltonian.
// R1: stationarity, max |conj(E_n(j,s)) - E_n(j,s)| with
//     E_n(j,s) = <psi_n|P_js H|psi_n>.
// R2: max residual of the second equilibrium equation at the given or
//     least-squares-fitted multipliers (lambda_N, lambda_E).
struct EquilibriumResiduals {
    double R1 = 0.0;
    double R2 = 0.0;
    double lambda_N = 0.0;
    double lambda_E = 0.0;
    double shannon_entropy = 0.0;  // H_A of p(a_j)
    double mean_energy = 0.0;      // Tr(rho H)
    double linear_relation_gap = 0.0;  // |H_A - ((1-lambda_N) - lambda_E E0)|
};

EquilibriumResiduals equilibrium_residuals(
    const qcore::DensityMatrix& rho, const qcore::ObservableSpectral& obs,
    const spectral::SpectralDecomposition& sd,
    std::optional<std::pair<double, double>> lambdas = std::nullopt);

// d/dt p_t(a_j) from the von Neumann equation, -i Tr([H, rho] A_j).
Eigen::VectorXd dpdt_vonneumann(const qcore::DensityMatrix& rho,
                                const qcore::ObservableSpectral& obs,
                                const Eigen::MatrixXcd& H);

}  // namespace thermolab::eth
