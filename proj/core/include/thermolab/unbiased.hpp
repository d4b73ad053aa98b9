#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermolab/qcore.hpp"
#include "thermolab/spectral.hpp"

namespace thermolab::unbiased {

// A collection of orthonormal bases of the same space; columns are vectors.
struct BasisFamily {
    std::vector<Eigen::MatrixXcd> bases;
    std::vector<std::string> labels;
};

// Observable diagonal in a Hamiltonian-unbiased basis.
struct HUOSpec {
    Eigen::MatrixXcd basis;                // D x D unitary, a HUB
    Eigen::VectorXd assigned_eigenvalues;  // one per basis vector
};

// The p+1 pairwise mutually unbiased bases of a prime dimension p <= 31:
// the computational basis plus the p Weyl (generalized Pauli) eigenbases.
BasisFamily mub_family_prime(int p);

// F_{nk} = exp(2*pi*i*n*k/D)/sqrt(D).
Eigen::MatrixXcd fourier_matrix(Eigen::Index D);

// Rotates the energy eigenbasis by the discrete-Fourier complex Hadamard;
// every column has |<E_n|b_j>| = 1/sqrt(D) exactly.
Eigen::MatrixXcd hub_from_spectrum(const spectral::SpectralDecomposition& sd);

// max_{j,k} | D*|<a_j|b_k>|^2 - 1 |: zero for exact MUB pairs, D-1 for
// identical bases.
double unbiasedness_score(const Eigen::MatrixXcd& basis_a,
                          const Eigen::MatrixXcd& basis_b);

qcore::ObservableSpectral build_huo(const HUOSpec& spec);

// --- generalized Bloch-vector machinery ------------------------------------

// Hermitian traceless generators, Tr(g_i g_j) = 2 delta_ij, ordered as
// (symmetric pairs, antisymmetric pairs, diagonal); D^2 - 1 of them.
std::vector<Eigen::MatrixXcd> bloch_generators(Eigen::Index D);

// Unit vector in R^(D^2-1) with |psi><psi| = I/D + sqrt((D-1)/D) b.gamma,
// gamma_i = g_i/sqrt(2).
Eigen::VectorXd bloch_vector(const Eigen::VectorXcd& psi);

// Unit vectors s_0..s_{D-1} in R^(D-1) with sum zero and pairwise dot
// -1/(D-1): vertices of the canonical regular simplex (Helmert frame).
Eigen::MatrixXd canonical_simplex(Eigen::Index D);

// --- Theorem-1 style construction ------------------------------------------

struct SubspaceBasisResult {
    Eigen::MatrixXcd basis;         // D x D_j, columns orthonormal in the full space
    Eigen::MatrixXd facet_vectors;  // (D_j^2-1) x D_j simplex in the Bloch complement
    double residual = 0.0;          // max_m,k | |<psi_m|j,k>|^2 - p_mj/D_j |
    bool converged = false;
    int iterations = 0;
};

// For each subspace (given as a D x D_j orthonormal frame), constructs an
// orthonormal basis whose squared overlaps with every input state psi_m equal
// <psi_m|Pi_j|psi_m>/D_j. Subspaces violating D_j(D_j-1) >= M+1 raise
// InfeasibleSubspace listing the offending indices.
//
// Construction: generalized Bloch vectors of the normalized projected states,
// an orthogonal-complement frame from a rank-revealing SVD (cutoff
// 1e-10*sigma_max), the canonical regular simplex mapped through that frame,
// then a seeded deterministic modulus-flattening refinement down to an exact
// orthonormal basis. The refinement converges for M < D_j; `converged` and
// `residual` report the outcome either way.
std::vector<SubspaceBasisResult> simplex_unbiased_basis(
    const Eigen::MatrixXcd& states,
    const std::vector<Eigen::MatrixXcd>& subspace_frames);

// Orthonormal frames of the eigenspaces of an observable, in eigenvalue order.
std::vector<Eigen::MatrixXcd> eigenspace_frames(const qcore::ObservableSpectral& obs);

// --- global-magnetization theorem scan --------------------------------------

struct TheoremConditionScan {
    struct Row {
        int N;
        int jstar;        // largest magnetization eigenvalue passing the condition
        long long q;      // 2*jstar + 1
    };
    struct LargeDeviationRow {
        int j;
        double ln_ratio;     // ln(D_j / 2^N)
        double ln_stirling;  // -N * H2(p(j)||p_mix) * ln 2
    };
    std::vector<Row> rows;
    double slope = 0.0;  // least-squares slope of q(N) vs N
    double intercept = 0.0;
    std::vector<LargeDeviationRow> large_deviation;  // at the largest N
};

// Scans N in [n_min, n_max], testing D_j(D_j-1) >= 2^N + 1 with
// D_j = C(N, (N-j)/2); exact integer arithmetic, N <= 24.
TheoremConditionScan magnetization_theorem_scan(int n_min, int n_max);

}  // namespace thermolab::unbiased
