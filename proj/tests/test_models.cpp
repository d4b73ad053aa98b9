#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "thermolab/eig.hpp"
#include "thermolab/models.hpp"
#include "oracles.hpp"

using namespace thermolab;
using models::Axis;

TEST_CASE("draw_disorder") {
    SUBCASE("W = 0 gives all-zero fields") {
        auto d = models::draw_disorder(0.0, 8, 1234, 0);
        for (double f : d.fields) CHECK(f == 0.0);
    }
    SUBCASE("determinism under (seed, index)") {
        auto a = models::draw_disorder(5.0, 10, 77, 3);
        auto b = models::draw_disorder(5.0, 10, 77, 3);
        CHECK(a.fields == b.fields);
        auto c = models::draw_disorder(5.0, 10, 77, 4);
        CHECK(a.fields != c.fields);
    }
    SUBCASE("uniform moments at W = 1") {
        double sum = 0.0, sum2 = 0.0;
        const int n = 100000;
        for (int i = 0; i < n / 10; ++i) {
            auto d = models::draw_disorder(1.0, 10, 99, std::uint64_t(i));
            for (double f : d.fields) {
                CHECK(f >= -1.0);
                CHECK(f <= 1.0);
                sum += f;
                sum2 += f * f;
            }
        }
        double mean = sum / n;
        double var = sum2 / n - mean * mean;
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(var - 1.0 / 3.0) < 0.05 / 3.0);
    }
    SUBCASE("negative W rejected") {
        CHECK_THROWS_AS(models::draw_disorder(-1.0, 4, 0, 0), ConfigError);
    }
}

TEST_CASE("XXZ spectra") {
    models::XXZParams p;
    p.L = 2;
    p.J = 1.0;
    p.Delta = 1.0;
    auto dis = models::draw_disorder(0.0, 2, 0, 0);

    SUBCASE("L=2 clean spectrum is {-3, 1, 1, 1}") {
        auto H = models::build_xxz(p, dis);
        CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        Eigen::VectorXd ev = eigh_values(H);
        CHECK(ev[0] == doctest::Approx(-3.0).epsilon(1e-12));
        for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("XX model: clean L=2 spectrum {-2, 0, 0, 2}") {
        p.Delta = 0.0;
        auto H = models::build_xx_anderson(p, dis);
        Eigen::VectorXd ev = eigh_values(H);
        CHECK(ev[0] == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ev[2] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ev[3] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("uniform fields Zeeman-shift the clean XX spectrum") {
        p.Delta = 0.0;
        p.L = 4;
        const double h = 0.3;
        models::DisorderRealization uni{std::vector<double>(4, h), 0, 0};
        auto clean = models::draw_disorder(0.0, 4, 0, 0);
        Eigen::VectorXd e0 = eigh_values(models::build_xx_anderson(p, clean));
        Eigen::VectorXd eh = eigh_values(models::build_xx_anderson(p, uni));
        // each magnetization sector shifts by m*h; check within sectors
        for (int mz = -4; mz <= 4; mz += 2) {
            auto basis = models::magnetization_sector(4, mz);
            Eigen::VectorXd s0 =
                eigh_values(models::build_xxz_sector(p, clean, mz));
            Eigen::VectorXd sh = eigh_values(models::build_xxz_sector(p, uni, mz));
            for (Eigen::Index i = 0; i < s0.size(); ++i)
                CHECK(sh[i] == doctest::Approx(s0[i] + mz * h).epsilon(1e-10));
        }
        CHECK(e0.size() == eh.size());
    }
    SUBCASE("Anderson builder rejects Delta != 0") {
        p.Delta = 0.5;
        CHECK_THROWS_AS(models::build_xx_anderson(p, dis), ConfigError);
    }
    SUBCASE("length mismatch rejected") {
        p.L = 3;
        CHECK_THROWS_AS(models::build_xxz(p, dis), ConfigError);
    }
}

TEST_CASE("XXZ commutes with global magnetization") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> ud(0.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        models::XXZParams p;
        p.L = 5;
        p.Delta = ud(gen);
        p.W = ud(gen);
        p.boundary = (rep % 2) ? models::Boundary::periodic : models::Boundary::open;
        auto dis = models::draw_disorder(p.W, p.L, 55, std::uint64_t(rep));
        auto H = models::build_xxz(p, dis);
        auto M = models::global_magnetization(p.L).matrix();
        CHECK((H * M - M * H).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("clean open chain spectrum is reflection symmetric") {
    models::XXZParams p;
    p.L = 6;
    p.Delta = 0.7;
    auto dis = models::draw_disorder(0.0, p.L, 0, 0);
    auto H = models::build_xxz(p, dis);
    // mirror the chain: reverse the bit order of every basis state
    const Eigen::Index D = Eigen::Index(1) << p.L;
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(D, D);
    for (Eigen::Index s = 0; s < D; ++s) {
        Eigen::Index t = 0;
        for (int b = 0; b < p.L; ++b)
            if (s & (Eigen::Index(1) << b)) t |= Eigen::Index(1) << (p.L - 1 - b);
        R(t, s) = 1.0;
    }
    Eigen::VectorXd e1 = eigh_values(H);
    Eigen::VectorXd e2 = eigh_values((R * H * R.adjoint()).eval());
    for (Eigen::Index i = 0; i < D; ++i)
        CHECK(e1[i] == doctest::Approx(e2[i]).epsilon(1e-10));
}

TEST_CASE("local Pauli observables") {
    SUBCASE("L=1 z is diag(1,-1)") {
        auto obs = models::local_pauli(1, 0, Axis::z);
        auto m = obs.matrix();
        CHECK(m(0, 0).real() == doctest::Approx(1.0));
        CHECK(m(1, 1).real() == doctest::Approx(-1.0));
    }
    SUBCASE("L=3 site 1 x has eigenvalues +-1 with degeneracy 4") {
        auto obs = models::local_pauli(3, 1, Axis::x);
        CHECK(obs.n_outcomes() == 2);
        CHECK(obs.degeneracies()[0] == 4);
        CHECK(obs.degeneracies()[1] == 4);
        CHECK(obs.eigenvalues()[0] == doctest::Approx(-1.0));
    }
    SUBCASE("squares to the identity") {
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            auto sig = models::site_operator(4, 2, a);
            CHECK((sig * sig - Eigen::MatrixXcd::Identity(16, 16))
                      .cwiseAbs()
                      .maxCoeff() < 1e-14);
        }
    }
    SUBCASE("site out of range") {
        CHECK_THROWS_AS(models::local_pauli(3, 3, Axis::z), ConfigError);
    }
}

TEST_CASE("global magnetization") {
    SUBCASE("L=2 eigenvalues and degeneracies") {
        auto obs = models::global_magnetization(2);
        CHECK(obs.n_outcomes() == 3);
        CHECK(obs.eigenvalues()[0] == doctest::Approx(-2.0));
        CHECK(obs.eigenvalues()[1] == doctest::Approx(0.0));
        CHECK(obs.eigenvalues()[2] == doctest::Approx(2.0));
        CHECK(obs.degeneracies()[0] == 1);
        CHECK(obs.degeneracies()[1] == 2);
        CHECK(obs.degeneracies()[2] == 1);
    }
    SUBCASE("L=4: degeneracy of m=0 is C(4,2)=6") {
        auto obs = models::global_magnetization(4);
        CHECK(obs.degeneracies()[2] == 6);
    }
    SUBCASE("degeneracies sum to 2^L") {
        for (int L = 1; L <= 12; ++L) {
            auto obs = models::global_magnetization(L);
            Eigen::Index sum = 0;
            for (auto d : obs.degeneracies()) sum += d;
            CHECK(sum == (Eigen::Index(1) << L));
        }
    }
}

TEST_CASE("Neel states") {
    SUBCASE("L=2 z-Neel is basis index 1") {
        auto psi = models::neel_state(2, Axis::z);
        CHECK(std::abs(psi.amplitudes()[1] - 1.0) < 1e-14);
    }
    SUBCASE("L=2 x-Neel matches (|0>+|1>)(|0>-|1>)/2") {
        auto psi = models::neel_state(2, Axis::x);
        Eigen::VectorXcd expect(4);
        expect << 0.5, -0.5, 0.5, -0.5;
        CHECK((psi.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("staggered expectation values") {
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            const int L = 5;
            auto psi = models::neel_state(L, a);
            for (int i = 0; i < L; ++i) {
                auto sig = models::site_operator(L, i, a);
                double v =
                    (psi.amplitudes().adjoint() * sig * psi.amplitudes())(0, 0).real();
                CHECK(v == doctest::Approx((i % 2 == 0) ? 1.0 : -1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("magnetization sectors") {
    auto basis = models::magnetization_sector(4, 0);
    CHECK(basis.size() == 6);
    models::XXZParams p;
    p.L = 4;
    p.Delta = 0.9;
    p.W = 2.0;
    auto dis = models::draw_disorder(p.W, p.L, 5, 0);
    auto Hfull = models::build_xxz(p, dis);
    auto Hs = models::build_xxz_sector(p, dis, 0);
    // sector block must match the full matrix restricted to the sector basis
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = 0; b < basis.size(); ++b)
            CHECK(std::abs(Hs(Eigen::Index(a), Eigen::Index(b)) -
                           Hfull(basis[a], basis[b])) < 1e-14);
}
