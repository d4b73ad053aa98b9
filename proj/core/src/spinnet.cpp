#include "thermolab/spinnet.hpp"

#include <cmath>
#include <numbers>

#include <mpfr.h>

namespace thermolab::spinnet {

namespace {

constexpr mpfr_prec_t kPrec = 128;

// ln of a positive mpz at 128-bit working precision
double ln_mpz(const mpz_class& z) {
    if (z <= 0) throw ConfigError("ln of non-positive integer");
    mpfr_t x;
    mpfr_init2(x, kPrec);
    mpfr_set_z(x, z.get_mpz_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return out;
}

// Binomial with the conventions C(n,0) = 1 for any n, C(n,m) = 0 for
// 0 <= n < m; negative n with m > 0 rejected.
mpz_class binom(long n, long m) {
    if (m == 0) return 1;
    if (m < 0) throw ConfigError("binomial with negative lower index");
    if (n < 0) throw ConfigError("binomial with negative n and m > 0");
    if (n < m) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(m));
    return r;
}

// High-precision entropy accumulator: S = -sum mult * w * ln(w).
class EntropyAccumulator {
  public:
    EntropyAccumulator() {
        mpfr_init2(acc_, kPrec);
        mpfr_set_zero(acc_, 1);
        mpfr_init2(tmp_, kPrec);
        mpfr_init2(lnw_, kPrec);
    }
    ~EntropyAccumulator() {
        mpfr_clear(acc_);
        mpfr_clear(tmp_);
        mpfr_clear(lnw_);
    }
    EntropyAccumulator(const EntropyAccumulator&) = delete;
    EntropyAccumulator& operator=(const EntropyAccumulator&) = delete;

    void add(const mpz_class& mult, const mpq_class& w) {
        if (w == 0) return;
        mpfr_set_q(lnw_, w.get_mpq_t(), MPFR_RNDN);
        mpfr_log(lnw_, lnw_, MPFR_RNDN);
        mpfr_set_q(tmp_, w.get_mpq_t(), MPFR_RNDN);
        mpfr_mul_z(tmp_, tmp_, mult.get_mpz_t(), MPFR_RNDN);
        mpfr_mul(tmp_, tmp_, lnw_, MPFR_RNDN);
        mpfr_sub(acc_, acc_, tmp_, MPFR_RNDN);
    }
    double value() const { return mpfr_get_d(acc_, MPFR_RNDN); }

  private:
    mpfr_t acc_, tmp_, lnw_;
};

}  // namespace

const mpz_class FusionTable::zero_ = 0;

FusionTable::FusionTable(TwiceSpin j, int n_max) : j2_(j.value) {
    if (n_max < 0) throw ConfigError("fusion table needs n_max >= 0");
    rows_.resize(size_t(n_max) + 1);
    rows_[0] = {mpz_class(1)};  // empty product = trivial rep
    for (int n = 1; n <= n_max; ++n) {
        const auto& prev = rows_[size_t(n - 1)];
        auto& cur = rows_[size_t(n)];
        cur.assign(size_t(n * j2_) + 1, mpz_class(0));
        for (int k2 = 0; k2 < static_cast<int>(prev.size()); ++k2) {
            if (prev[size_t(k2)] == 0) continue;
            for (int kp = std::abs(k2 - j2_); kp <= k2 + j2_; kp += 2)
                cur[size_t(kp)] += prev[size_t(k2)];
        }
    }
}

const mpz_class& FusionTable::multiplicity(int n, int k2) const {
    if (n < 0 || n >= static_cast<int>(rows_.size()))
        throw ConfigError("fusion table row out of range");
    if (k2 < 0 || k2 >= static_cast<int>(rows_[size_t(n)].size())) return zero_;
    return rows_[size_t(n)][size_t(k2)];
}

mpz_class FusionTable::weighted_dimension_sum(int n) const {
    mpz_class s = 0;
    for (int k2 = 0; k2 <= max_k2(n); ++k2)
        s += mpz_class(k2 + 1) * multiplicity(n, k2);
    return s;
}

double asymptotic_log_multiplicity(TwiceSpin j, int n, TwiceSpin k) {
    if (j.value == 0) throw ConfigError("asymptotic form needs j > 0");
    if (n < 1) throw ConfigError("asymptotic form needs n >= 1");
    const double jj = 0.5 * j.value;           // j
    const double kk = 0.5 * k.value;           // k
    return n * std::log(double(j.value) + 1.0) + std::log(kk + 1.0) -
           1.5 * std::log(jj * (jj + 1.0) * double(n));
}

mpz_class intertwiner_dim(int N, int J0) {
    if (N < 1 || J0 < 0) throw ConfigError("intertwiner_dim needs N >= 1, J0 >= 0");
    if (J0 == 0) return 1;
    mpz_class num = binom(N + J0 - 1, J0) * binom(N + J0 - 2, J0);
    mpz_class d;
    mpz_class div(J0 + 1);
    if (!mpz_divisible_p(num.get_mpz_t(), div.get_mpz_t()))
        throw ConfigError("intertwiner dimension formula not integral");
    mpz_divexact(d.get_mpz_t(), num.get_mpz_t(), div.get_mpz_t());
    return d;
}

mpz_class dfunction(int Q, int x2, int y2) {
    if (Q < 1) throw ConfigError("dfunction needs Q >= 1");
    if (x2 < 0 || y2 < 0 || x2 > y2)
        throw ConfigError("dfunction needs 0 <= x <= y");
    if ((x2 + y2) % 2 != 0)
        throw ConfigError("dfunction arguments x + y, y - x must be integral");
    const long sum = (x2 + y2) / 2;    // x + y
    const long diff = (y2 - x2) / 2;   // y - x
    mpz_class num = mpz_class(x2 + 1) * binom(Q + sum - 1, sum) *
                    binom(Q + diff - 2, diff);
    mpz_class den(sum + 1);
    mpq_class q(num, den);
    q.canonicalize();
    if (q.get_den() != 1)
        throw ConfigError("dfunction did not evaluate to an integer");
    return q.get_num();
}

void IntertwinerSpec::validate() const {
    if (N < 2 || k < 1 || k >= N) throw ConfigError("need 1 <= k < N");
    if (J0 < 0) throw ConfigError("J0 >= 0 required");
    if (Jmax < J0) throw ConfigError("Jmax >= J0 required");
}

CanonicalSurfaceState canonical_surface_state(const IntertwinerSpec& spec) {
    spec.validate();
    if (static_cast<long long>(spec.J0) * spec.J0 > 64000000LL)
        throw ResourceError("surface enumeration too large (J0^2 rows)");
    CanonicalSurfaceState st;
    st.N = spec.N;
    st.k = spec.k;
    st.J0 = spec.J0;
    st.d_R = intertwiner_dim(spec.N, spec.J0);

    mpq_class norm = 0;
    EntropyAccumulator entropy;
    double mean2JS = 0.0;

    // J_S <= J0/2 (so JS2 <= J0); closure defect |J_S| <= min(J_S, J0-J_S)
    // with the same half-integer parity as J_S.
    for (int JS2 = 0; JS2 <= spec.J0; ++JS2) {
        const int env_area2 = 2 * spec.J0 - JS2;  // 2(J0 - J_S)
        for (int x2 = JS2 % 2; x2 <= std::min(JS2, env_area2); x2 += 2) {
            mpz_class WE = dfunction(spec.N - spec.k, x2, env_area2);
            if (WE == 0) continue;
            mpz_class WS = dfunction(spec.k, x2, JS2);
            if (WS == 0) continue;
            SurfaceRow row;
            row.JS2 = JS2;
            row.x2 = x2;
            row.weight = mpq_class(WE, mpz_class(x2 + 1) * st.d_R);
            row.weight.canonicalize();
            row.multiplicity = WS * mpz_class(x2 + 1);
            mpq_class p = row.weight * mpq_class(row.multiplicity);
            p.canonicalize();
            norm += p;
            entropy.add(row.multiplicity, row.weight);
            mean2JS += p.get_d() * JS2;
            st.rows.push_back(std::move(row));
        }
    }
    norm.canonicalize();
    if (norm != 1)
        throw InvalidState(
            "canonical surface state does not normalize exactly; enumeration "
            "range is wrong for this spec");
    st.entropy = entropy.value();
    st.mean_twice_system_area = mean2JS;
    return st;
}

TypicalityReport typicality_bound(const IntertwinerSpec& spec, double eps) {
    spec.validate();
    if (!(eps > 0.0)) throw ConfigError("eps > 0 required");
    TypicalityReport r;
    r.eps = eps;
    r.ln_dS = spec.k * (std::log(2.0 * spec.Jmax + 1.0) + std::log(spec.Jmax + 1.0));
    r.ln_dR = ln_mpz(intertwiner_dim(spec.N, spec.J0));
    r.ln_ratio = r.ln_dS - 0.5 * r.ln_dR;

    const double lnJmax = std::log(spec.Jmax);
    r.threshold_area = lnJmax;
    r.threshold_links = 2.0 * lnJmax;
    r.cut_area_ok = double(spec.J0) / spec.k > r.threshold_area;
    const double j0 = double(spec.J0) / spec.N;
    r.cut_links_ok =
        j0 > 0.0 && (double(spec.N) / spec.k) * std::log(j0) > r.threshold_links;

    r.levy_prefactor = 2.0 / (9.0 * std::pow(std::numbers::pi, 3));
    // d_levy = C(N+J0-1, J0)/(J0+1); see project notes for the convention
    mpz_class dlevy_num = binom(spec.N + spec.J0 - 1, spec.J0);
    double ln_dlevy = ln_mpz(dlevy_num) - std::log(double(spec.J0) + 1.0);
    double ln_exponent =
        std::log(r.levy_prefactor) + 2.0 * std::log(eps) + ln_dlevy;
    r.levy_exponent_log10 = ln_exponent / std::numbers::ln10;
    // ln B = ln 4 - exp(ln_exponent); representable only for small exponents
    if (ln_exponent < std::log(1e300))
        r.ln_levy = std::log(4.0) - std::exp(ln_exponent);
    else
        r.ln_levy = -std::numeric_limits<double>::infinity();
    return r;
}

SurfaceEntropyReport surface_entropy_regimes(const IntertwinerSpec& spec) {
    spec.validate();
    SurfaceEntropyReport rep;
    rep.j0 = double(spec.J0) / spec.N;
    rep.regime = rep.j0 <= 0.2 ? "small-j0" : (rep.j0 >= 5.0 ? "large-j0" : "order-1");
    rep.asym_large_j0 =
        2.0 * spec.k * (1.0 + std::log(double(spec.J0) / spec.N));
    rep.asym_order1 = 2.0 * spec.k - 3.0;
    try {
        CanonicalSurfaceState st = canonical_surface_state(spec);
        rep.exact_available = true;
        rep.exact_entropy = st.entropy;
        const double beta = 1.0 + std::log(double(spec.N - spec.k) / spec.J0);
        rep.asym_small_j0 = beta * st.mean_twice_system_area;
        rep.alpha_fit = std::exp(st.entropy / (2.0 * spec.k)) /
                        (std::sqrt(2.0) * rep.j0);
        if (st.entropy != 0.0) {
            rep.rel_dev_small =
                std::abs(st.entropy - rep.asym_small_j0) / std::abs(st.entropy);
            rep.rel_dev_large =
                std::abs(st.entropy - rep.asym_large_j0) / std::abs(st.entropy);
        }
    } catch (const ResourceError&) {
        rep.exact_available = false;
    }
    return rep;
}

void FlowerGraphSpec::validate() const {
    if (E < 1) throw ConfigError("flower graph needs E >= 1");
    if (L < 0) throw ConfigError("loop count must be >= 0");
    if (j02 < 1) throw ConfigError("j0 > 0 required");
}

double boundary_asymptotic_k_factor(int k2) {
    const double k = 0.5 * k2;
    return (k + 1.0) / (2.0 * k + 1.0);
}

BoundaryCanonicalState boundary_canonical_state(const FlowerGraphSpec& spec,
                                                long max_table_entries) {
    spec.validate();
    BoundaryCanonicalState st;
    st.spec = spec;
    st.threshold_bulk_dominant = 2 * spec.L > spec.E;

    const double j0 = 0.5 * spec.j02;
    const double d = spec.j02 + 1.0;  // 2j0+1
    const double legs = double(spec.E) + 2.0 * spec.L;
    st.entropy_asymptotic =
        spec.E * std::log(d) -
        1.5 * std::log(1.0 + double(spec.E) / (2.0 * spec.L));
    st.ln_bound_asymptotic = (0.5 * spec.E - spec.L) * std::log(d) +
                             0.75 * std::log(j0 * (j0 + 1.0) * legs);

    const int n_total = spec.E + 2 * spec.L;
    // table rows hold up to n*j02+1 entries each
    const long entries =
        static_cast<long>(n_total) * (static_cast<long>(n_total) * spec.j02 + 2) / 2;
    if (entries > max_table_entries) {
        st.exact_available = false;
        return st;
    }

    FusionTable table(TwiceSpin(spec.j02), n_total);
    st.d_FR = table.multiplicity(n_total, 0);
    if (st.d_FR == 0) {
        // no gauge-invariant state at all (parity obstruction); exact side is
        // empty, report the asymptotics only
        st.exact_available = false;
        return st;
    }

    mpq_class norm = 0;
    EntropyAccumulator entropy;
    for (int k2 = 0; k2 <= table.max_k2(spec.E); ++k2) {
        const mpz_class& dE = table.multiplicity(spec.E, k2);
        const mpz_class& dL = table.multiplicity(2 * spec.L, k2);
        if (dE == 0 || dL == 0) continue;
        BoundaryRow row;
        row.k2 = k2;
        row.weight = mpq_class(dL, st.d_FR * mpz_class(k2 + 1));
        row.weight.canonicalize();
        row.multiplicity = mpz_class(k2 + 1) * dE;
        mpq_class p = row.weight * mpq_class(row.multiplicity);
        p.canonicalize();
        norm += p;
        entropy.add(row.multiplicity, row.weight);
        st.rows.push_back(std::move(row));
    }
    norm.canonicalize();
    if (norm != 1)
        throw InvalidState("boundary canonical state does not normalize exactly");
    st.exact_available = true;
    st.entropy_exact = entropy.value();
    st.ln_bound_exact = spec.E * std::log(d) - 0.5 * ln_mpz(st.d_FR);
    return st;
}

}  // namespace thermolab::spinnet
