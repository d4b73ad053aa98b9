#include "thermolab/models.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "thermolab/rng.hpp"

namespace thermolab::models {

using cxd = qcore::cxd;

DisorderRealization draw_disorder(double W, int L, std::uint64_t seed,
                                  std::uint64_t index) {
    if (W < 0.0) throw ConfigError("disorder strength W must be >= 0");
    DisorderRealization d;
    d.seed = seed;
    d.index = index;
    d.fields.resize(size_t(L));
    std::mt19937_64 gen(stream_seed(seed, index));
    for (int i = 0; i < L; ++i) d.fields[size_t(i)] = uniform_symmetric(gen, W);
    return d;
}

Eigen::Matrix2cd pauli(Axis axis) {
    Eigen::Matrix2cd m;
    switch (axis) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, cxd(0, -1), cxd(0, 1), 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

namespace {

// bit = 1 means spin down; site 0 is the most significant bit.
inline int zsign(Eigen::Index state, int L, int site) {
    return (state >> (L - 1 - site)) & 1 ? -1 : 1;
}

std::vector<std::pair<int, int>> bonds(int L, Boundary b) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i + 1 < L; ++i) out.emplace_back(i, i + 1);
    if (b == Boundary::periodic && L > 2) out.emplace_back(L - 1, 0);
    return out;
}

}  // namespace

Eigen::MatrixXcd build_xxz(const XXZParams& p, const DisorderRealization& dis) {
    if (p.L < 2) throw ConfigError("XXZ chain needs L >= 2");
    if (static_cast<int>(dis.fields.size()) != p.L)
        throw ConfigError("disorder realization length does not match L");
    const Eigen::Index D = Eigen::Index(1) << p.L;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    const auto bl = bonds(p.L, p.boundary);
    for (Eigen::Index s = 0; s < D; ++s) {
        double diag = 0.0;
        for (int i = 0; i < p.L; ++i)
            diag += dis.fields[size_t(i)] * zsign(s, p.L, i);
        for (auto [i, j] : bl) {
            int zi = zsign(s, p.L, i), zj = zsign(s, p.L, j);
            diag += p.Delta * zi * zj;
            if (zi != zj) {
                // (sx sx + sy sy) flips an antiparallel pair with amplitude 2
                Eigen::Index t = s ^ ((Eigen::Index(1) << (p.L - 1 - i)) |
                                      (Eigen::Index(1) << (p.L - 1 - j)));
                H(t, s) += 2.0 * p.J;
            }
        }
        H(s, s) = diag;
    }
    return H;
}

Eigen::MatrixXcd build_xx_anderson(const XXZParams& p,
                                   const DisorderRealization& dis) {
    if (p.Delta != 0.0)
        throw ConfigError("Anderson/XX model requires Delta = 0");
    return build_xxz(p, dis);
}

Eigen::MatrixXcd site_operator(int L, int site, Axis axis) {
    if (site < 0 || site >= L) throw ConfigError("site out of range");
    const Eigen::Index D = Eigen::Index(1) << L;
    const Eigen::Index mask = Eigen::Index(1) << (L - 1 - site);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(D, D);
    for (Eigen::Index s = 0; s < D; ++s) {
        switch (axis) {
            case Axis::z: op(s, s) = (s & mask) ? -1.0 : 1.0; break;
            case Axis::x: op(s ^ mask, s) = 1.0; break;
            case Axis::y: op(s ^ mask, s) = (s & mask) ? cxd(0, -1) : cxd(0, 1); break;
        }
    }
    return op;
}

qcore::ObservableSpectral local_pauli(int L, int site, Axis axis) {
    Eigen::MatrixXcd sig = site_operator(L, site, axis);
    const Eigen::Index D = sig.rows();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(D, D);
    Eigen::VectorXd vals(2);
    vals << -1.0, 1.0;
    std::vector<Eigen::MatrixXcd> projs{0.5 * (I - sig), 0.5 * (I + sig)};
    return qcore::ObservableSpectral(vals, std::move(projs));
}

qcore::ObservableSpectral global_magnetization(int L) {
    if (L < 1) throw ConfigError("global_magnetization needs L >= 1");
    const Eigen::Index D = Eigen::Index(1) << L;
    Eigen::VectorXd vals(L + 1);
    std::vector<Eigen::MatrixXcd> projs(size_t(L) + 1);
    for (int k = 0; k <= L; ++k) {
        vals[k] = -L + 2 * k;  // ascending
        projs[size_t(k)] = Eigen::MatrixXcd::Zero(D, D);
    }
    for (Eigen::Index s = 0; s < D; ++s) {
        int ndown = std::popcount(static_cast<std::uint64_t>(s));
        int k = L - ndown;  // m = L - 2*ndown = -L + 2k
        projs[size_t(k)](s, s) = 1.0;
    }
    return qcore::ObservableSpectral(vals, std::move(projs));
}

qcore::PureState neel_state(int L, Axis axis) {
    if (L < 1) throw ConfigError("neel_state needs L >= 1");
    Eigen::Vector2cd up, down;
    const double r = 1.0 / std::sqrt(2.0);
    switch (axis) {
        case Axis::z:
            up << 1, 0;
            down << 0, 1;
            break;
        case Axis::x:
            up << r, r;
            down << r, -r;
            break;
        case Axis::y:
            up << r, cxd(0, r);
            down << r, cxd(0, -r);
            break;
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
    for (int i = 0; i < L; ++i) {
        const Eigen::Vector2cd& site = (i % 2 == 0) ? up : down;
        Eigen::VectorXcd next(psi.size() * 2);
        for (Eigen::Index a = 0; a < psi.size(); ++a) {
            next[2 * a] = psi[a] * site[0];
            next[2 * a + 1] = psi[a] * site[1];
        }
        psi.swap(next);
    }
    return qcore::PureState(std::move(psi));
}

std::vector<Eigen::Index> magnetization_sector(int L, int mz) {
    if ((L - mz) % 2 != 0 || mz < -L || mz > L)
        throw ConfigError("magnetization eigenvalue incompatible with L");
    const int ndown = (L - mz) / 2;
    std::vector<Eigen::Index> out;
    const Eigen::Index D = Eigen::Index(1) << L;
    for (Eigen::Index s = 0; s < D; ++s)
        if (std::popcount(static_cast<std::uint64_t>(s)) == ndown) out.push_back(s);
    return out;
}

Eigen::MatrixXcd build_xxz_sector(const XXZParams& p,
                                  const DisorderRealization& dis, int mz) {
    if (static_cast<int>(dis.fields.size()) != p.L)
        throw ConfigError("disorder realization length does not match L");
    auto basis = magnetization_sector(p.L, mz);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    std::vector<Eigen::Index> pos(size_t(Eigen::Index(1) << p.L), -1);
    for (Eigen::Index a = 0; a < n; ++a) pos[size_t(basis[size_t(a)])] = a;

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    const auto bl = bonds(p.L, p.boundary);
    for (Eigen::Index a = 0; a < n; ++a) {
        const Eigen::Index s = basis[size_t(a)];
        double diag = 0.0;
        for (int i = 0; i < p.L; ++i)
            diag += dis.fields[size_t(i)] * zsign(s, p.L, i);
        for (auto [i, j] : bl) {
            int zi = zsign(s, p.L, i), zj = zsign(s, p.L, j);
            diag += p.Delta * zi * zj;
            if (zi != zj) {
                Eigen::Index t = s ^ ((Eigen::Index(1) << (p.L - 1 - i)) |
                                      (Eigen::Index(1) << (p.L - 1 - j)));
                H(pos[size_t(t)], a) += 2.0 * p.J;
            }
        }
        H(a, a) = diag;
    }
    return H;
}

}  // namespace thermolab::models
