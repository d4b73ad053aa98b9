#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "thermolab/errors.hpp"

namespace thermolab::qcore {

using cxd = std::complex<double>;

// Normalized state vector. Tensor ordering is big-endian: for a chain,
// site 0 is the leftmost factor, so |s0 s1 ... s_{L-1}> has basis index
// sum_i s_i * d^(L-1-i).
class PureState {
  public:
    explicit PureState(Eigen::VectorXcd amplitudes);
    static PureState basis_vector(Eigen::Index dim, Eigen::Index index);

    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

  private:
    Eigen::VectorXcd amps_;
};

// Hermitian, unit-trace, positive-semidefinite matrix (all within tolerance).
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);
    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return rho_.rows(); }
    const Eigen::MatrixXcd& entries() const { return rho_; }

  private:
    Eigen::MatrixXcd rho_;
};

// Spectral decomposition of an observable: strictly increasing distinct
// eigenvalues a_j with orthogonal projectors A_j and degeneracies d_j.
class ObservableSpectral {
  public:
    ObservableSpectral(Eigen::VectorXd distinct_eigenvalues,
                       std::vector<Eigen::MatrixXcd> projectors);

    // Groups eigenvalues of a Hermitian matrix that agree within 1e-9
    // relative tolerance into a single projector.
    static ObservableSpectral from_hermitian(const Eigen::MatrixXcd& op);

    Eigen::Index dim() const { return projectors_.front().rows(); }
    int n_outcomes() const { return static_cast<int>(eigvals_.size()); }
    const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
    const std::vector<Eigen::MatrixXcd>& projectors() const { return projectors_; }
    const std::vector<Eigen::Index>& degeneracies() const { return degen_; }

    Eigen::MatrixXcd matrix() const;  // sum_j a_j A_j

  private:
    Eigen::VectorXd eigvals_;
    std::vector<Eigen::MatrixXcd> projectors_;
    std::vector<Eigen::Index> degen_;
};

// Probability distribution p(a_j) = Tr(rho A_j) over observable outcomes.
struct EigenvalueDistribution {
    Eigen::VectorXd outcomes;
    Eigen::VectorXd probs;
};

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Traces out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions in tensor order; their product must equal dim(rho).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep);

// Reduced state of one site of a qubit-chain pure state (the hot path of the
// dynamics runs; avoids forming the full density matrix).
Eigen::Matrix2cd single_site_reduced(const Eigen::VectorXcd& psi, int L, int site);

// Von Neumann entropy in nats. Eigenvalues of rho within 1e-10 of [0,1] are
// clipped before evaluation; 0*ln(0) := 0.
double von_neumann_entropy(const DensityMatrix& rho);
double renyi_entropy(const DensityMatrix& rho, double alpha);

// Entropy of a spectrum that is already known (skips rediagonalization).
double entropy_from_probs(const Eigen::VectorXd& probs);

EigenvalueDistribution eigenvalue_distribution(const DensityMatrix& rho,
                                               const ObservableSpectral& obs);

double shannon_entropy(const EigenvalueDistribution& dist);
double renyi_entropy(const EigenvalueDistribution& dist, double alpha);

// D(rho, sigma) = (1/2) sum of singular values of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace thermolab::qcore
