#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iongate/fidelity.hpp"

using iongate::fidelity_exact_sum;
using iongate::infidelity_lamb_dicke_series;

namespace {

// High-resolution reference: long double, 10000 terms.
long double exact_sum_reference(long double eta, long double nbar) {
    const long double eta2 = eta * eta;
    const long double pi_half = 1.57079632679489661923L;
    long double sum = 0.0L;
    long double p = 1.0L / (1.0L + nbar);
    const long double q = nbar / (1.0L + nbar);
    for (int n = 0; n < 10000; ++n, p *= q)
        sum += p * std::cos(pi_half * eta2 * (2 * n + 1));
    return 0.5L + 0.5L * sum;
}

}  // namespace

TEST_CASE("exact thermal fidelity: limits and frozen values") {
    CHECK(fidelity_exact_sum(0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-14));

    // Ground state, eta = 0.1: F = 1/2 + 1/2 cos(pi/2 * 0.01).
    const double f_ground = fidelity_exact_sum(0.1, 0.0);
    CHECK(1.0 - f_ground == doctest::Approx(6.1685e-5).epsilon(1e-3));

    // Thermal nbar = 3 against the extended-precision summation.
    const double f_thermal = fidelity_exact_sum(0.1, 3.0);
    CHECK(f_thermal ==
          doctest::Approx(static_cast<double>(exact_sum_reference(0.1L, 3.0L))).epsilon(1e-12));
}

TEST_CASE("exact fidelity stays in [0,1] and decreases with eta in the small-eta range") {
    double prev = 1.0;
    for (double eta = 0.0; eta <= 1.0; eta += 0.05) {
        for (double nbar : {0.0, 0.5, 1.0, 3.0, 10.0}) {
            const double f = fidelity_exact_sum(eta, nbar);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
        const double f3 = fidelity_exact_sum(eta, 3.0);
        CHECK(f3 <= prev + 1e-12);
        prev = f3;
    }
}

TEST_CASE("Lamb-Dicke series as printed") {
    CHECK(infidelity_lamb_dicke_series(0.0, 3.0).value == 0.0);
    const auto s = infidelity_lamb_dicke_series(0.1, 3.0);
    CHECK(s.value == doctest::Approx(M_PI * M_PI * 1e-4 * 12.125).epsilon(1e-12));
    CHECK(s.value == doctest::Approx(1.1968e-2).epsilon(1e-3));
    CHECK(s.in_validity_range);
    CHECK_FALSE(infidelity_lamb_dicke_series(0.8, 10.0).in_validity_range);
}

TEST_CASE("series/exact ratio settles to a constant as eta -> 0") {
    // Documents the factor-of-two question: the printed series is a constant
    // multiple of the exact-sum expansion, independently of eta and nbar.
    double reference_ratio = 0.0;
    for (double nbar : {0.0, 1.0, 3.0, 10.0}) {
        for (double eta : {0.02, 0.01, 0.005}) {
            const double exact_inf = 1.0 - fidelity_exact_sum(eta, nbar);
            const double ratio = infidelity_lamb_dicke_series(eta, nbar).value / exact_inf;
            if (reference_ratio == 0.0) reference_ratio = ratio;
            CHECK(ratio == doctest::Approx(reference_ratio).epsilon(1e-3));
        }
    }
    CHECK(reference_ratio == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("TP/LP series ratio at equal nbar is the squared frequency ratio") {
    const double nbar = 2.0;
    const double eta_z = 0.1;
    const double beta = 10.0;
    const double eta_x = eta_z / std::sqrt(beta);
    const double ratio = infidelity_lamb_dicke_series(eta_x, nbar).value /
                         infidelity_lamb_dicke_series(eta_z, nbar).value;
    CHECK(ratio == doctest::Approx(1.0 / (beta * beta)).epsilon(1e-12));
}

TEST_CASE("mode weights: CM value, zero-temperature limit, Bose identity") {
    const auto chain = iongate::solve_equilibrium(10);
    const auto modes = iongate::compute_modes(chain, 10.0, iongate::Axis::transverse, 0.1);

    const auto zero_t = iongate::mode_weights(modes, 0.0);
    for (int k = 0; k < modes.size(); ++k) CHECK(zero_t[k] == 1.0);

    const auto weights = iongate::mode_weights(modes, 3.0);
    // An axial-CM-frequency mode (omega = 1) would weigh exactly 1 + 2 nbar.
    const auto axial = iongate::compute_modes(chain, 10.0, iongate::Axis::longitudinal, 0.1);
    const auto axial_weights = iongate::mode_weights(axial, 3.0);
    CHECK(axial_weights[axial.size() - 1] == doctest::Approx(7.0).epsilon(1e-12));

    // beta_bar_k = 1 + 2 nbar_k with nbar_k the Bose occupation at the common
    // temperature referenced to omega_z = 1.
    const double log_term = std::log1p(1.0 / 3.0);
    for (int k = 0; k < modes.size(); ++k) {
        const double x = modes.frequencies[k] * log_term;
        const double nbar_k = 1.0 / std::expm1(x);
        CHECK(std::abs(weights[k] - (1.0 + 2.0 * nbar_k)) <= 1e-10);
        CHECK(weights[k] >= 1.0);
    }

    // Small nbar: weights approach 1.
    const auto cold = iongate::mode_weights(modes, 1e-9);
    for (int k = 0; k < modes.size(); ++k) CHECK(cold[k] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("displacement infidelity: arithmetic, phase invariance, mismatch error") {
    Eigen::MatrixXcd alpha = Eigen::MatrixXcd::Zero(2, 1);
    Eigen::VectorXd weights(1);
    weights << 7.0;
    CHECK(iongate::displacement_infidelity(alpha, weights) == 0.0);

    alpha(0, 0) = std::complex<double>(0.1, 0.0);
    alpha(1, 0) = std::complex<double>(0.0, 0.1);
    CHECK(iongate::displacement_infidelity(alpha, weights) == doctest::Approx(0.035));

    // Phase rotation leaves the result unchanged.
    alpha(0, 0) *= std::polar(1.0, 1.234);
    alpha(1, 0) *= std::polar(1.0, -2.1);
    CHECK(iongate::displacement_infidelity(alpha, weights) ==
          doctest::Approx(0.035).epsilon(1e-12));

    Eigen::VectorXd wrong(2);
    wrong << 1.0, 1.0;
    CHECK_THROWS_AS(iongate::displacement_infidelity(alpha, wrong), iongate::ValidationError);
}

TEST_CASE("TP versus LP scaling ratios") {
    const auto r = iongate::scaling_ratios(10.0, 1.0, 1.0, true);
    CHECK(r.infidelity_ratio == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(r.intensity_ratio == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

    CHECK(iongate::scaling_ratios(10.0, 2.0, 2.0, false).infidelity_ratio ==
          doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(iongate::scaling_ratios(10.0, 1.0, 1.0, false).intensity_ratio ==
          doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));

    const auto unity = iongate::scaling_ratios(1.0, 1.5, 1.5, false);
    CHECK(unity.infidelity_ratio == doctest::Approx(1.0));
    CHECK(unity.intensity_ratio == doctest::Approx(1.0));
    CHECK(iongate::scaling_ratios(1.0, 1.0, 1.0, true).intensity_ratio ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
}
