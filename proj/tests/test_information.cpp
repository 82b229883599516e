#include <catch_amalgamated.hpp>

#include "gsd/information.hpp"
#include "oracle_support.hpp"

using namespace gsd;
using Catch::Matchers::WithinAbs;

TEST_CASE("shannon_bsc endpoints and fixed value") {
    REQUIRE(shannon_bsc(0.5) == 0.0);
    REQUIRE(shannon_bsc(0.0) == 1.0);
    REQUIRE_THAT(shannon_bsc(0.10246995118967495), WithinAbs(0.52322338956680549, 1e-12));
}

TEST_CASE("shannon_bsc domain") {
    REQUIRE_THROWS_AS(shannon_bsc(-1e-12), std::domain_error);
    REQUIRE_THROWS_AS(shannon_bsc(0.5 + 1e-12), std::domain_error);
    REQUIRE_THROWS_AS(shannon_bsc(std::nan("")), std::domain_error);
}

TEST_CASE("shannon_bsc is strictly decreasing on [0, 0.5]") {
    double prev = shannon_bsc(0.0);
    for (int i = 1; i <= 50; ++i) {
        const double cur = shannon_bsc(0.01 * i);
        REQUIRE(cur < prev);
        prev = cur;
    }
    REQUIRE(shannon_bsc(0.5 - 1e-15) >= 0.0);
}

TEST_CASE("levitin bound limits and the Helstrom equivalence") {
    REQUIRE(levitin_bound(0.0, 0.0) == 0.0);
    REQUIRE(levitin_bound(0.0, 1.7) == 0.0);
    REQUIRE_THAT(levitin_bound(5.0, 0.3), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(levitin_bound(0.5, 0.0),
                 WithinAbs(shannon_bsc(helstrom_pure_coherent(0.5)), 1e-12));
    // p never enters
    REQUIRE(levitin_bound(0.8, 0.0) == levitin_bound(0.8, 2.5));
}

TEST_CASE("levitin equals the pure-coherent matrix-path rate over samples") {
    for (const auto& [x, p] : oracle::spread_points(10)) {
        const auto pure = discriminate({x, p}, StateFamily::coherent(), Mixedness::Pure, 50);
        REQUIRE_THAT(shannon_bsc(pure.p_error), WithinAbs(levitin_bound(x, p), 1e-6));
    }
}

TEST_CASE("information gain assembly") {
    SECTION("both maximally noisy") {
        const auto pure = discriminate({0.0, 0.0}, StateFamily::coherent(), Mixedness::Pure, 20);
        const auto mixed =
            discriminate({0.0, 0.0}, StateFamily::coherent(), Mixedness::Mixed, 20);
        const auto rates = information_gain(pure, mixed);
        REQUIRE(rates.i_pure == 0.0);
        REQUIRE(rates.i_mixed == 0.0);
        REQUIRE(rates.i_gain == 0.0);
        REQUIRE(rates.levitin.has_value());
        REQUIRE(*rates.levitin == 0.0);
    }
    SECTION("flat region: both errors at zero") {
        DiscriminationResult pure, mixed;
        pure.trace_distance = mixed.trace_distance = 1.0;
        pure.p_error = mixed.p_error = 0.0;
        pure.config = {{2.4, 0.1}, StateFamily::coherent(), Mixedness::Pure, 50};
        mixed.config = {{2.4, 0.1}, StateFamily::coherent(), Mixedness::Mixed, 50};
        const auto rates = information_gain(pure, mixed);
        REQUIRE(rates.i_pure == 1.0);
        REQUIRE(rates.i_mixed == 1.0);
        REQUIRE(rates.i_gain == 0.0);
    }
    SECTION("strict gain inside the mixed-excess region") {
        const auto pure =
            discriminate({0.5, 0.55}, StateFamily::coherent(), Mixedness::Pure, 50);
        const auto mixed =
            discriminate({0.5, 0.55}, StateFamily::coherent(), Mixedness::Mixed, 50);
        const auto rates = information_gain(pure, mixed);
        REQUIRE(rates.i_gain > 0.0);
        REQUIRE(rates.i_pure > rates.i_mixed);
    }
    SECTION("levitin is absent for the squeezed family") {
        const auto pure =
            discriminate({0.5, 0.55}, StateFamily::squeezed(0.35), Mixedness::Pure, 50);
        const auto mixed =
            discriminate({0.5, 0.55}, StateFamily::squeezed(0.35), Mixedness::Mixed, 50);
        REQUIRE_FALSE(information_gain(pure, mixed).levitin.has_value());
    }
}

TEST_CASE("information gain rejects mismatched configurations") {
    const auto pure = discriminate({0.5, 0.55}, StateFamily::coherent(), Mixedness::Pure, 50);
    const auto mixed = discriminate({0.5, 0.55}, StateFamily::coherent(), Mixedness::Mixed, 50);
    const auto other = discriminate({0.5, 0.60}, StateFamily::coherent(), Mixedness::Mixed, 50);
    const auto sq = discriminate({0.5, 0.55}, StateFamily::squeezed(0.35), Mixedness::Mixed, 50);
    const auto dim = discriminate({0.5, 0.55}, StateFamily::coherent(), Mixedness::Mixed, 40);

    REQUIRE_THROWS_AS(information_gain(mixed, pure), std::domain_error);
    REQUIRE_THROWS_AS(information_gain(pure, other), std::domain_error);
    REQUIRE_THROWS_AS(information_gain(pure, sq), std::domain_error);
    REQUIRE_THROWS_AS(information_gain(pure, dim), std::domain_error);
    REQUIRE_NOTHROW(information_gain(pure, mixed));
}

TEST_CASE("monotone link: error ordering implies rate ordering") {
    for (const auto& [x, p] : oracle::spread_points(8)) {
        for (const auto& family : {StateFamily::coherent(), StateFamily::squeezed(0.70)}) {
            const auto pure = discriminate({x, p}, family, Mixedness::Pure, 50);
            const auto mixed = discriminate({x, p}, family, Mixedness::Mixed, 50);
            REQUIRE(mixed.p_error >= pure.p_error - 1e-9);
            const auto rates = information_gain(pure, mixed);
            REQUIRE(rates.i_mixed <= rates.i_pure + 1e-9);
            REQUIRE(rates.i_gain >= -1e-9);
            REQUIRE(rates.i_pure >= 0.0);
            REQUIRE(rates.i_pure <= 1.0);
            REQUIRE(rates.i_mixed >= 0.0);
            REQUIRE(rates.i_mixed <= 1.0);
        }
    }
}
