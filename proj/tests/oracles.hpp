// Independent test oracles. Everything here recomputes expected values by a
// route different from the library code it checks.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace oracles {

// ---- SU(2) fusion by explicit map-based recursion (not the library DP) ----

// multiplicities of twice-spin k in V_{a/2} (x) V_{b/2} ... given as maps
inline std::map<int, mpz_class> fuse(const std::map<int, mpz_class>& reps, int j2) {
    std::map<int, mpz_class> out;
    for (const auto& [k2, c] : reps)
        for (int kp = std::abs(k2 - j2); kp <= k2 + j2; kp += 2) out[kp] += c;
    return out;
}

// dim Inv(V_{j1} (x) ... (x) V_{jn}) for arbitrary spins (twice units)
inline mpz_class invariant_dim(const std::vector<int>& j2s) {
    std::map<int, mpz_class> reps{{0, mpz_class(1)}};
    for (int j2 : j2s) reps = fuse(reps, j2);
    auto it = reps.find(0);
    return it == reps.end() ? mpz_class(0) : it->second;
}

// Sum of invariant-subspace dimensions over every assignment {j_i} of N
// spins with total twice-area 2*J0: the brute-force value of the N-valent
// intertwiner dimension at fixed area.
inline mpz_class intertwiner_dim_enumeration(int N, int J0) {
    mpz_class total = 0;
    std::vector<int> assignment(static_cast<size_t>(N), 0);
    std::function<void(int, int)> rec = [&](int leg, int remaining2) {
        if (leg == N - 1) {
            assignment[static_cast<size_t>(leg)] = remaining2;
            total += invariant_dim(assignment);
            return;
        }
        for (int j2 = 0; j2 <= remaining2; ++j2) {
            assignment[static_cast<size_t>(leg)] = j2;
            rec(leg + 1, remaining2 - j2);
        }
    };
    rec(0, 2 * J0);
    return total;
}

// Same enumeration, restricted to fixed total spin x2 of the whole set
// (brute-force D-function): number of Q-leg states with total area y and
// total spin x, counting multiplicities of V_x.
inline mpz_class dfunction_enumeration(int Q, int x2, int y2) {
    mpz_class total = 0;
    std::vector<int> assignment(static_cast<size_t>(Q), 0);
    std::function<void(int, int)> rec = [&](int leg, int remaining2) {
        if (leg == Q - 1) {
            assignment[static_cast<size_t>(leg)] = remaining2;
            std::map<int, mpz_class> reps{{0, mpz_class(1)}};
            for (int j2 : assignment) reps = fuse(reps, j2);
            auto it = reps.find(x2);
            if (it != reps.end()) total += it->second;
            return;
        }
        for (int j2 = 0; j2 <= remaining2; ++j2) {
            assignment[static_cast<size_t>(leg)] = j2;
            rec(leg + 1, remaining2 - j2);
        }
    };
    rec(0, y2);
    return total;
}

// ---- character-integral quadrature for ^j d_k^n ---------------------------

// (2/pi) Int_0^pi sin(t) sin((2k+1)t) (sin((2j+1)t)/sin t)^n dt by adaptive
// Simpson.
inline double character_integrand(double t, int j2, int n, int k2) {
    double s = std::sin(t);
    double chi;
    if (std::abs(s) < 1e-9) {
        chi = j2 + 1.0;  // limit of sin((2j+1)t)/sin(t)
    } else {
        chi = std::sin((j2 + 1.0) * t) / s;
    }
    return s * std::sin((k2 + 1.0) * t) * std::pow(chi, n);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline double fusion_multiplicity_quadrature(int j2, int n, int k2) {
    auto f = [&](double t) { return character_integrand(t, j2, n, k2); };
    // refine until two Richardson levels agree
    double prev = simpson(f, 0.0, M_PI, 512);
    for (int steps = 1024; steps <= 1 << 20; steps *= 2) {
        double cur = simpson(f, 0.0, M_PI, steps);
        if (std::abs(cur - prev) < 1e-9 * std::max(1.0, std::abs(cur)))
            return cur * 2.0 / M_PI;
        prev = cur;
    }
    return prev * 2.0 / M_PI;
}

// ---- dense linear-algebra helpers ------------------------------------------

inline Eigen::MatrixXcd random_hermitian(Eigen::Index D, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd A(D, D);
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = 0; j < D; ++j)
            A(i, j) = std::complex<double>(nd(gen), nd(gen));
    return 0.5 * (A + A.adjoint()).eval();
}

inline Eigen::VectorXcd random_state(Eigen::Index D, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(D);
    for (Eigen::Index i = 0; i < D; ++i)
        v[i] = std::complex<double>(nd(gen), nd(gen));
    return v / v.norm();
}

inline Eigen::MatrixXcd random_density(Eigen::Index D, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd G(D, D);
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = 0; j < D; ++j)
            G(i, j) = std::complex<double>(nd(gen), nd(gen));
    Eigen::MatrixXcd rho = G * G.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint()).eval();
}

// GHZ state on L qubits
inline Eigen::VectorXcd ghz(int L) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << L);
    v[0] = 1.0 / std::sqrt(2.0);
    v[v.size() - 1] = 1.0 / std::sqrt(2.0);
    return v;
}

}  // namespace oracles
