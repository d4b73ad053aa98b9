#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "thermolab/models.hpp"
#include "thermolab/rng.hpp"
#include "thermolab/spectral.hpp"
#include "oracles.hpp"

using namespace thermolab;

TEST_CASE("diagonalize") {
    SUBCASE("sorts a diagonal matrix") {
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(3, 3);
        H(0, 0) = 3.0;
        H(1, 1) = 1.0;
        H(2, 2) = 2.0;
        auto sd = spectral::diagonalize(H);
        CHECK(sd.energies[0] == doctest::Approx(1.0));
        CHECK(sd.energies[1] == doctest::Approx(2.0));
        CHECK(sd.energies[2] == doctest::Approx(3.0));
        CHECK((sd.vectors.adjoint() * sd.vectors -
               Eigen::MatrixXcd::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK_FALSE(sd.degenerate);
    }
    SUBCASE("clean L=2 XXZ flags its degeneracy") {
        models::XXZParams p;
        p.L = 2;
        auto dis = models::draw_disorder(0.0, 2, 0, 0);
        auto sd = spectral::diagonalize(models::build_xxz(p, dis));
        CHECK(sd.energies[0] == doctest::Approx(-3.0));
        CHECK(sd.energies[3] == doctest::Approx(1.0));
        CHECK(sd.degenerate);
    }
    SUBCASE("sigma_x eigenvectors") {
        Eigen::MatrixXcd sx(2, 2);
        sx << 0, 1, 1, 0;
        auto sd = spectral::diagonalize(sx);
        CHECK(sd.energies[0] == doctest::Approx(-1.0));
        CHECK(sd.energies[1] == doctest::Approx(1.0));
        // |<0|E_0>| = |<1|E_0>| = 1/sqrt2 up to phase
        CHECK(std::abs(sd.vectors(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(std::abs(sd.vectors(1, 1)) == doctest::Approx(1 / std::sqrt(2.0)));
    }
    SUBCASE("reconstruction") {
        std::mt19937_64 gen(2);
        auto H = oracles::random_hermitian(16, gen);
        auto sd = spectral::diagonalize(H);
        Eigen::MatrixXcd back = sd.vectors *
                                sd.energies.cast<qcore::cxd>().asDiagonal() *
                                sd.vectors.adjoint();
        CHECK((back - H).cwiseAbs().maxCoeff() < 1e-9 * H.cwiseAbs().maxCoeff());
    }
    SUBCASE("non-Hermitian rejected") {
        Eigen::MatrixXcd bad(2, 2);
        bad << 0, 1, 0, 0;
        CHECK_THROWS_AS(spectral::diagonalize(bad), InvalidOperator);
    }
}

TEST_CASE("evolve") {
    std::mt19937_64 gen(3);
    auto H = oracles::random_hermitian(8, gen);
    auto sd = spectral::diagonalize(H);
    auto psi0 = qcore::PureState(oracles::random_state(8, gen));

    SUBCASE("t = 0 returns the initial state") {
        auto psi = spectral::evolve(sd, psi0, 0.0);
        CHECK((psi.amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("eigenstates only pick up phases") {
        auto e3 = qcore::PureState(sd.vectors.col(3));
        auto psi = spectral::evolve(sd, e3, 1.7);
        double overlap =
            std::abs((psi.amplitudes().adjoint() * e3.amplitudes())(0, 0));
        CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two-level superposition oscillates at omega = E1 - E0") {
        // qubit with H = sigma_z: omega = 2, period pi
        Eigen::MatrixXcd sz(2, 2);
        sz << 1, 0, 0, -1;
        auto sdq = spectral::diagonalize(sz);
        Eigen::VectorXcd plus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        auto p0 = qcore::PureState(plus);
        Eigen::MatrixXcd sx(2, 2);
        sx << 0, 1, 1, 0;
        const double period = 2.0 * std::numbers::pi / 2.0;
        auto val = [&](double t) {
            auto psi = spectral::evolve(sdq, p0, t);
            return (psi.amplitudes().adjoint() * sx * psi.amplitudes())(0, 0).real();
        };
        CHECK(val(0.0) == doctest::Approx(val(period)).epsilon(1e-6));
        CHECK(val(0.37) == doctest::Approx(val(0.37 + period)).epsilon(1e-6));
        CHECK(val(period / 2) == doctest::Approx(-val(0.0)).epsilon(1e-6));
    }
    SUBCASE("unitarity and energy-distribution conservation, 1000 cases") {
        std::mt19937_64 g2(99);
        std::uniform_real_distribution<double> ut(0.0, 100.0);
        Eigen::VectorXd p0 =
            (sd.vectors.adjoint() * psi0.amplitudes()).cwiseAbs2();
        for (int rep = 0; rep < 1000; ++rep) {
            double t = ut(g2);
            auto psi = spectral::evolve(sd, psi0, t);
            CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-10);
            Eigen::VectorXd pt =
                (sd.vectors.adjoint() * psi.amplitudes()).cwiseAbs2();
            CHECK((pt - p0).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("diagonal ensemble") {
    std::mt19937_64 gen(5);
    auto H = oracles::random_hermitian(10, gen);
    auto sd = spectral::diagonalize(H);

    SUBCASE("eigenstate maps to its own projector") {
        auto e2 = qcore::PureState(sd.vectors.col(2));
        auto de = spectral::diagonal_ensemble(sd, e2);
        Eigen::MatrixXcd expect = sd.vectors.col(2) * sd.vectors.col(2).adjoint();
        CHECK((de.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("balanced two-eigenstate superposition") {
        Eigen::VectorXcd v =
            (sd.vectors.col(1) + sd.vectors.col(2)) / std::sqrt(2.0);
        auto de = spectral::diagonal_ensemble(sd, qcore::PureState(v));
        Eigen::MatrixXcd expect =
            0.5 * (sd.vectors.col(1) * sd.vectors.col(1).adjoint() +
                   sd.vectors.col(2) * sd.vectors.col(2).adjoint());
        CHECK((de.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("matches the long-time average within 2%") {
        auto psi0 = qcore::PureState(oracles::random_state(10, gen));
        auto A = oracles::random_hermitian(10, gen);
        auto de = spectral::diagonal_ensemble(sd, psi0);
        double de_val = (de.entries() * A).trace().real();
        // quadrature long-time average over t in [0, 1e4]
        spectral::Evolver ev(sd, psi0);
        double acc = 0.0;
        const int n = 4000;
        std::mt19937_64 g3(12);
        for (int i = 0; i < n; ++i) {
            double t = 1e4 * (i + 0.5) / n;
            Eigen::VectorXcd psi = ev.state_at(t);
            acc += (psi.adjoint() * A * psi)(0, 0).real();
        }
        acc /= n;
        double scale = std::abs(de_val) + std::abs(acc);
        CHECK(std::abs(de_val - acc) <= 0.02 * std::max(scale, 1.0));
    }
    SUBCASE("commutes with H") {
        auto psi0 = qcore::PureState(oracles::random_state(10, gen));
        auto de = spectral::diagonal_ensemble(sd, psi0);
        CHECK((de.entries() * H - H * de.entries()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("microcanonical state") {
    std::mt19937_64 gen(6);
    auto sd = spectral::diagonalize(oracles::random_hermitian(8, gen));
    SUBCASE("full window gives I/D") {
        double lo = sd.energies[0], hi = sd.energies[7];
        spectral::EnergyWindow w{0.5 * (lo + hi), (hi - lo) * 1.01};
        auto mc = spectral::microcanonical_state(sd, w);
        CHECK((mc.entries() - Eigen::MatrixXcd::Identity(8, 8) / 8.0)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("single-state window") {
        spectral::EnergyWindow w{sd.energies[3], 1e-9};
        auto mc = spectral::microcanonical_state(sd, w);
        CHECK(qcore::von_neumann_entropy(mc) == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("m states give ln m") {
        spectral::EnergyWindow w{0.5 * (sd.energies[2] + sd.energies[4]),
                                 (sd.energies[4] - sd.energies[2]) * 1.001};
        auto mc = spectral::microcanonical_state(sd, w);
        CHECK(qcore::von_neumann_entropy(mc) ==
              doctest::Approx(std::log(3.0)).epsilon(1e-9));
    }
    SUBCASE("empty window throws") {
        spectral::EnergyWindow w{sd.energies[7] + 100.0, 0.1};
        CHECK_THROWS_AS(spectral::microcanonical_state(sd, w), EmptyWindow);
    }
}

TEST_CASE("gibbs state") {
    std::mt19937_64 gen(7);
    auto sd = spectral::diagonalize(oracles::random_hermitian(6, gen));
    SUBCASE("beta = 0 is maximally mixed") {
        auto g = spectral::gibbs_state(sd, 0.0);
        CHECK((g.entries() - Eigen::MatrixXcd::Identity(6, 6) / 6.0)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("large beta projects on the ground state") {
        double gap = sd.energies[1] - sd.energies[0];
        auto g = spectral::gibbs_state(sd, 1e3 / gap);
        Eigen::MatrixXcd p0 = sd.vectors.col(0) * sd.vectors.col(0).adjoint();
        CHECK((g.entries() - p0).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("qubit closed form at beta = 1") {
        Eigen::MatrixXcd sz(2, 2);
        sz << 1, 0, 0, -1;
        auto sdq = spectral::diagonalize(sz);
        auto g = spectral::gibbs_state(sdq, 1.0);
        const double e = std::exp(1.0);
        double p_down = e / (e + 1.0 / e);  // weight of the E = -1 state
        CHECK(g.entries()(1, 1).real() == doctest::Approx(p_down).epsilon(1e-12));
    }
    SUBCASE("Gibbs identity S = ln Z + beta <H> for 100 random cases") {
        std::mt19937_64 g2(8);
        std::uniform_real_distribution<double> ub(0.0, 10.0);
        for (int rep = 0; rep < 100; ++rep) {
            auto sdr = spectral::diagonalize(oracles::random_hermitian(7, g2));
            double beta = ub(g2);
            auto rho = spectral::gibbs_state(sdr, beta);
            double S = qcore::von_neumann_entropy(rho);
            double lnZ = spectral::gibbs_log_partition(sdr, beta);
            Eigen::MatrixXcd H = sdr.vectors *
                                 sdr.energies.cast<qcore::cxd>().asDiagonal() *
                                 sdr.vectors.adjoint();
            double meanE = (rho.entries() * H).trace().real();
            CHECK(std::abs(S - (lnZ + beta * meanE)) < 1e-8);
        }
    }
}

TEST_CASE("level spacing statistics") {
    SUBCASE("equally spaced spectrum gives ratio 1") {
        Eigen::VectorXd e(100);
        for (int i = 0; i < 100; ++i) e[i] = i * 0.5;
        auto st = spectral::level_spacing_stats(e, 1.0);
        CHECK(st.mean_gap_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("i.i.d. exponential spacings match the sampled Poisson value") {
        // oracle: direct sampling of exponential spacings
        std::mt19937_64 gen(100);
        std::exponential_distribution<double> ed(1.0);
        const int n = 100000;
        Eigen::VectorXd e(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += ed(gen);
            e[i] = acc;
        }
        auto st = spectral::level_spacing_stats(e, 1.0);
        // sampled oracle for <min/max> of consecutive exponential gaps
        std::mt19937_64 g2(101);
        double oracle = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = ed(g2), b = ed(g2);
            oracle += std::min(a, b) / std::max(a, b);
        }
        oracle /= n;
        CHECK(std::abs(st.mean_gap_ratio - oracle) < 0.01);
    }
    SUBCASE("too few levels throws") {
        Eigen::VectorXd e(30);
        for (int i = 0; i < 30; ++i) e[i] = i;
        CHECK_THROWS_AS(spectral::level_spacing_stats(e, 1.0), InsufficientSpectrum);
    }
    SUBCASE("XXZ L=12 sector: W=1 more rigid than W=10") {
        models::XXZParams p;
        p.L = 12;
        p.Delta = 1.0;
        const int ndis = 50;
        double r_small = 0.0, r_large = 0.0;
        for (int rep = 0; rep < ndis; ++rep) {
            for (double W : {1.0, 10.0}) {
                p.W = W;
                auto dis = models::draw_disorder(W, p.L, 1000 + rep, 0);
                auto H = models::build_xxz_sector(p, dis, 0);
                auto sd = spectral::diagonalize(H);
                auto st = spectral::level_spacing_stats(sd, 0.5);
                (W == 1.0 ? r_small : r_large) += st.mean_gap_ratio;
            }
        }
        r_small /= ndis;
        r_large /= ndis;
        CHECK(r_small > r_large);
    }
}
