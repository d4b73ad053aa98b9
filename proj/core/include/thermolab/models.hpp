#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "thermolab/qcore.hpp"

namespace thermolab::models {

enum class Boundary { open, periodic };
enum class Axis { x, y, z };

// Disordered XXZ chain, hbar = 1, energies in units of J:
//   H = sum_i J (sx_i sx_{i+1} + sy_i sy_{i+1}) + Delta sz_i sz_{i+1}
//       + sum_i B_i sz_i,   B_i uniform on [-W, W].
struct XXZParams {
    int L = 2;
    double J = 1.0;
    double Delta = 1.0;
    double W = 0.0;
    Boundary boundary = Boundary::open;
    std::uint64_t seed = 0;
};

struct DisorderRealization {
    std::vector<double> fields;  // B_i, one per site
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

// Deterministic given (seed, index); i.i.d. uniform on [-W, W].
DisorderRealization draw_disorder(double W, int L, std::uint64_t seed,
                                  std::uint64_t index);

Eigen::Matrix2cd pauli(Axis axis);

Eigen::MatrixXcd build_xxz(const XXZParams& p, const DisorderRealization& dis);

// XX model with on-site transverse-field disorder (the spin form of the
// Anderson chain). Rejects Delta != 0.
Eigen::MatrixXcd build_xx_anderson(const XXZParams& p,
                                   const DisorderRealization& dis);

// sigma^axis on one site, identity elsewhere. Eigenvalues (-1, +1) each with
// degeneracy 2^(L-1).
qcore::ObservableSpectral local_pauli(int L, int site, Axis axis);

// Dense matrix of sigma^axis_site (no spectral data); cheaper than
// local_pauli when only the operator is needed.
Eigen::MatrixXcd site_operator(int L, int site, Axis axis);

// M_z = sum_i sz_i with eigenvalues m in {-L, -L+2, ..., L} and
// degeneracy C(L, (L-m)/2).
qcore::ObservableSpectral global_magnetization(int L);

// |up_a down_a up_a ...> along the given axis; <psi|sigma_i^a|psi> = (-1)^i.
qcore::PureState neel_state(int L, Axis axis);

// Computational-basis states (site 0 = most significant bit, bit 1 = down)
// with magnetization eigenvalue mz, in increasing index order.
std::vector<Eigen::Index> magnetization_sector(int L, int mz);

// XXZ Hamiltonian restricted to one M_z sector, in the sector basis returned
// by magnetization_sector.
Eigen::MatrixXcd build_xxz_sector(const XXZParams& p,
                                  const DisorderRealization& dis, int mz);

}  // namespace thermolab::models
