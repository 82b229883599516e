#include <catch_amalgamated.hpp>

#include <numbers>

#include "gsd/homodyne.hpp"
#include "gsd/spectra.hpp"

using namespace gsd;
using Catch::Matchers::WithinAbs;

TEST_CASE("conditional error: identical hypotheses and ties") {
    for (double m : {-3.0, -0.2, 0.0, 0.7, 10.0}) REQUIRE(conditional_error(m, 0.0) == 0.5);
    REQUIRE(conditional_error(0.0, 1.3) == 0.5);
}

TEST_CASE("conditional error: correct-center outcome at large separation") {
    REQUIRE(conditional_error(5.0, 5.0) < 1e-80);
}

TEST_CASE("conditional error matches the two-Gaussian ratio") {
    const double direct = std::exp(-2.0 * 0.8 * 0.8) /
                          (std::exp(-2.0 * 0.2 * 0.2) + std::exp(-2.0 * 0.8 * 0.8));
    REQUIRE_THAT(conditional_error(0.3, 0.5), WithinAbs(direct, 1e-15));
    // mirrored for negative outcomes
    REQUIRE(conditional_error(-0.3, 0.5) == conditional_error(0.3, 0.5));
    REQUIRE_THROWS_AS(conditional_error(0.3, -0.5), std::domain_error);
}

TEST_CASE("outcome density normalizes to one") {
    for (double x : {0.0, 0.5, 2.5}) {
        const QuadratureOutcomeDensity density{x};
        const auto q =
            integrate_adaptive([&](double m) { return density(m); }, x - 10.0, x + 10.0, 1e-12);
        REQUIRE(q.converged);
        REQUIRE_THAT(q.value, WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("homodyne error: exact limits and frozen value") {
    REQUIRE(homodyne_error(0.0) == 0.5);
    REQUIRE(homodyne_error(3.0) < 1e-8);
    REQUIRE_THAT(homodyne_error(0.5), WithinAbs(0.224799754603, 1e-9));
    REQUIRE(homodyne_error(0.5) > helstrom_pure_coherent(0.5));
    REQUIRE_THROWS_AS(homodyne_error(-0.1), std::domain_error);
}

TEST_CASE("homodyne error dominates the optimal measurement") {
    for (int i = 0; i <= 50; ++i) {
        const double x = 0.05 * i;
        const double ph = homodyne_error(x);
        const double hel = helstrom_pure_coherent(x);
        REQUIRE(ph >= hel - 1e-9);
        if (x > 0.0) REQUIRE(ph - hel > 1e-9);  // equality only at x = 0
    }
}

TEST_CASE("homodyne error is nonincreasing in x") {
    double prev = homodyne_error(0.0);
    for (int i = 1; i <= 50; ++i) {
        const double cur = homodyne_error(0.05 * i);
        REQUIRE(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("both integral forms agree") {
    for (double x : {0.05, 0.3, 0.5, 1.0, 1.8, 2.5}) {
        REQUIRE_THAT(homodyne_error(x), WithinAbs(homodyne_error_via_conditional(x), 1e-9));
    }
}

TEST_CASE("adaptive quadrature: Gaussian reference and non-convergence flag") {
    const auto q = integrate_adaptive([](double m) { return std::exp(-2.0 * m * m); }, 0.0,
                                      8.0, 1e-12);
    REQUIRE(q.converged);
    REQUIRE_THAT(q.value, WithinAbs(0.5 * std::sqrt(std::numbers::pi / 2.0), 1e-12));

    const auto hopeless = integrate_adaptive([](double m) { return std::exp(-2.0 * m * m); },
                                             0.0, 8.0, 1e-30, 2);
    REQUIRE_FALSE(hopeless.converged);
    REQUIRE(hopeless.error_estimate > 0.0);
}
