#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "thermolab/errors.hpp"

namespace thermolab::spinnet {

// Spins are stored as twice-spin integers: value = 2j >= 0, d_j = value + 1.
struct TwiceSpin {
    int value = 0;
    explicit TwiceSpin(int v) : value(v) {
        if (v < 0) throw ConfigError("twice-spin must be >= 0");
    }
    int dim() const { return value + 1; }
};

// Exact multiplicities ^j d_k^n of V_k inside the n-fold tensor power of V_j,
// built by iterated Clebsch-Gordan fusion. Row n covers k2 = 0 .. n*2j.
class FusionTable {
  public:
    FusionTable(TwiceSpin j, int n_max);

    const mpz_class& multiplicity(int n, int k2) const;
    int j2() const { return j2_; }
    int n_max() const { return static_cast<int>(rows_.size()) - 1; }
    int max_k2(int n) const { return n * j2_; }

    // sum_k (k2+1) ^j d_k^n, equal to (2j+1)^n exactly
    mpz_class weighted_dimension_sum(int n) const;

  private:
    int j2_;
    std::vector<std::vector<mpz_class>> rows_;  // rows_[n][k2]
    static const mpz_class zero_;
};

// ln of the n >> k asymptotic ^j d_k^n ~ (2j+1)^n (k+1)/[j(j+1)n]^(3/2),
// evaluated in the log domain; j and k in spin units inside the formula.
double asymptotic_log_multiplicity(TwiceSpin j, int n, TwiceSpin k);

// Dimension of the N-valent intertwiner space at fixed (integer) total area:
// (1/(J0+1)) C(N+J0-1, J0) C(N+J0-2, J0), exactly.
mpz_class intertwiner_dim(int N, int J0);

// Count of Q-leg states with total spin x and total area y (both in
// twice-spin units; x2+y2 must be even):
// D_(Q)(x,y) = ((2x+1)/(x+y+1)) C(Q+y+x-1, x+y) C(Q+y-x-2, y-x).
// Binomial conventions: C(n,0) = 1 for any integer n; C(n,m) = 0 for
// 0 <= n < m; negative n with m > 0 is rejected.
mpz_class dfunction(int Q, int x2, int y2);

struct IntertwinerSpec {
    int N = 2;    // legs
    int k = 1;    // system legs
    int J0 = 0;   // total area (integer)
    double Jmax = 1.0;  // representation cutoff

    void validate() const;
};

// Named preset for the cosmological cutoff 4*pi*(L_U/l_P)^2.
inline constexpr double kCosmologicalJmax = 3e124;

// One eigenvalue block of the reduced canonical surface state: all states
// with system area J_S and closure defect |J_S| share weight
// W_E / (d_|J_S| d_R) and there are W_S * d_|J_S| of them.
struct SurfaceRow {
    int JS2 = 0;  // 2*J_S
    int x2 = 0;   // 2*|J_S|
    mpq_class weight;
    mpz_class multiplicity;
};

struct CanonicalSurfaceState {
    int N = 0, k = 0, J0 = 0;
    mpz_class d_R;
    std::vector<SurfaceRow> rows;
    double entropy = 0.0;                  // nats, from the exact rationals
    double mean_twice_system_area = 0.0;   // <2 J_S>
};

// Exact reduced state of k system legs out of an N-valent intertwiner with
// total area J0. Normalization is verified exactly in rational arithmetic;
// a violation throws (it would signal a wrong enumeration range, and must
// surface rather than be patched).
CanonicalSurfaceState canonical_surface_state(const IntertwinerSpec& spec);

struct TypicalityReport {
    double ln_dS = 0.0;
    double ln_dR = 0.0;      // exact, from the two-binomial dimension formula
    double ln_ratio = 0.0;   // ln(d_S / sqrt(d_R))
    double threshold_area = 0.0;    // ln Jmax; cut passes when J0/k exceeds it
    double threshold_links = 0.0;   // 2 ln Jmax; cut passes when (N/k) ln j0 exceeds it
    bool cut_area_ok = false;       // J0/k > ln Jmax
    bool cut_links_ok = false;      // (N/k) ln j0 > 2 ln Jmax
    double eps = 0.0;
    double levy_prefactor = 0.0;          // 2/(9 pi^3)
    double levy_exponent_log10 = 0.0;     // log10 of (2/9pi^3) d_levy eps^2
    double ln_levy = 0.0;                 // ln B = ln 4 - exponent, -inf if huge
};

// Log-domain concentration-of-measure report. The Levy exponent uses
// d_levy = C(N+J0-1, J0)/(J0+1) (see the project notes: this is the
// convention that reproduces the published numeric example).
TypicalityReport typicality_bound(const IntertwinerSpec& spec, double eps);

struct SurfaceEntropyReport {
    std::string regime;  // "small-j0" | "order-1" | "large-j0" (advisory)
    double j0 = 0.0;     // J0/N
    bool exact_available = false;
    double exact_entropy = 0.0;
    double asym_small_j0 = 0.0;  // beta <2 J_S>, beta = 1 + ln((N-k)/J0)
    double asym_large_j0 = 0.0;  // 2k (1 + ln(J0/N))
    double asym_order1 = 0.0;    // 2k - 3
    double alpha_fit = 0.0;      // exp(S/2k)/(sqrt(2) j0)
    double rel_dev_small = 0.0;
    double rel_dev_large = 0.0;
};

SurfaceEntropyReport surface_entropy_regimes(const IntertwinerSpec& spec);

struct FlowerGraphSpec {
    int E = 1;   // boundary edges E_dR
    int L = 0;   // independent loops L_R = E_R - V_R + 1
    int j02 = 1; // twice the common spin

    void validate() const;
};

struct BoundaryRow {
    int k2 = 0;
    mpq_class weight;        // W_k^E = ^j0 d_k^(2L) / (d_FR (2k+1))
    mpz_class multiplicity;  // (2k+1) ^j0 d_k^E
};

struct BoundaryCanonicalState {
    FlowerGraphSpec spec;
    bool exact_available = false;
    mpz_class d_FR;               // ^j0 d_0^(E+2L)
    std::vector<BoundaryRow> rows;
    double entropy_exact = 0.0;
    double entropy_asymptotic = 0.0;   // E ln(2j0+1) - (3/2) ln(1 + E/(2L))
    double ln_bound_exact = 0.0;       // ln(d_dR) - (1/2) ln(d_FR)
    double ln_bound_asymptotic = 0.0;  // (E/2-L) ln(2j0+1) + (3/4) ln(j0(j0+1)(E+2L))
    bool threshold_bulk_dominant = false;  // 2L > E
};

// Exact canonical boundary state of a flower graph (all spins j0), its
// entropy, and the log-domain typicality bound. Falls back to the
// asymptotic-only report when the fusion table would exceed the budget.
BoundaryCanonicalState boundary_canonical_state(const FlowerGraphSpec& spec,
                                                long max_table_entries = 50000000);

// k-dependent factor of the asymptotic W_k^E as printed, (k+1)/(2k+1) with k
// in spin units.
double boundary_asymptotic_k_factor(int k2);

}  // namespace thermolab::spinnet
