#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iongate/crystal.hpp"
#include "oracles.hpp"

using iongate::IonChain;
using iongate::solve_equilibrium;

TEST_CASE("single ion sits at the trap center") {
    const IonChain chain = solve_equilibrium(1);
    REQUIRE(chain.size() == 1);
    CHECK(chain.positions[0] == 0.0);
}

TEST_CASE("two-ion equilibrium is the analytic +-(1/2)^(2/3)") {
    const IonChain chain = solve_equilibrium(2);
    const double u = std::pow(0.5, 2.0 / 3.0);
    CHECK(chain.positions[0] == doctest::Approx(-u).epsilon(1e-12));
    CHECK(chain.positions[1] == doctest::Approx(+u).epsilon(1e-12));
}

TEST_CASE("three-ion equilibrium is the analytic +-(5/4)^(1/3), 0") {
    const IonChain chain = solve_equilibrium(3);
    const double u = std::cbrt(1.25);
    CHECK(std::abs(chain.positions[0] + u) < 1e-10);
    CHECK(std::abs(chain.positions[1]) < 1e-10);
    CHECK(std::abs(chain.positions[2] - u) < 1e-10);
}

TEST_CASE("force residual, mirror antisymmetry, and zero CM up to N = 50") {
    for (int n : {2, 5, 10, 20, 35, 50}) {
        CAPTURE(n);
        const IonChain chain = solve_equilibrium(n);
        CHECK(chain.residual_norm <= 1e-10);

        const auto f = iongate::force_residual(chain.positions);
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(f[j]) <= 1e-10);
            CHECK(std::abs(chain.positions[j] + chain.positions[n - 1 - j]) <= 1e-10);
            sum += chain.positions[j];
            if (j > 0) CHECK(chain.positions[j] > chain.positions[j - 1]);
        }
        CHECK(std::abs(sum) <= 1e-10);
    }
}

TEST_CASE("agrees with the energy-minimization oracle for N = 2..12") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const IonChain chain = solve_equilibrium(n);
        const auto oracle = oracles::minimize_chain_energy(n);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(chain.positions[j] - oracle[j]) <= 1e-8);
    }
}

TEST_CASE("solver is deterministic") {
    const IonChain a = solve_equilibrium(17);
    const IonChain b = solve_equilibrium(17);
    for (int j = 0; j < 17; ++j) CHECK(a.positions[j] == b.positions[j]);
}

TEST_CASE("length scale power laws and Yb-171 value") {
    const double mass = 2.838e-25;  // kg, Yb-171
    const double omega = 2.0 * M_PI * 1e6;
    const double ell = iongate::length_scale(mass, omega);
    // One-line oracle: cbrt(ke e^2 / (M omega^2)).
    const double expected =
        std::cbrt(8.9875517873681764e9 * 1.602176634e-19 * 1.602176634e-19 /
                  (mass * omega * omega));
    CHECK(ell == doctest::Approx(expected).epsilon(1e-14));

    CHECK(iongate::length_scale(mass, 2.0 * omega) ==
          doctest::Approx(ell / std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(iongate::length_scale(4.0 * mass, omega) ==
          doctest::Approx(ell / std::cbrt(4.0)).epsilon(1e-12));

    CHECK_THROWS_AS(iongate::length_scale(-1.0, omega), iongate::ValidationError);
    CHECK_THROWS_AS(iongate::length_scale(mass, 0.0), iongate::ValidationError);
}

TEST_CASE("linearity check against the 0.73 N^0.86 criterion") {
    iongate::TrapConfig cfg;
    cfg.n_ions = 10;
    cfg.beta_x = 10.0;
    auto result = iongate::linearity_check(cfg);
    CHECK(result.linear);
    CHECK(result.threshold == doctest::Approx(5.3).epsilon(0.01));

    cfg.beta_x = 5.0;
    CHECK_FALSE(iongate::linearity_check(cfg).linear);

    cfg.n_ions = 1;
    cfg.beta_x = 0.1;
    CHECK(iongate::linearity_check(cfg).linear);
}

TEST_CASE("config validation") {
    iongate::TrapConfig cfg;
    cfg.n_ions = 0;
    CHECK_THROWS_AS(cfg.validate(), iongate::ValidationError);
    cfg = {};
    cfg.beta_x = -1.0;
    CHECK_THROWS_AS(cfg.validate(), iongate::ValidationError);
    cfg = {};
    cfg.nbar_cm = -0.5;
    CHECK_THROWS_AS(cfg.validate(), iongate::ValidationError);
}
