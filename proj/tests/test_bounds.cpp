#include <cmath>

#include "doctest.h"
#include "lforge/bounds.hpp"
#include "lforge/error.hpp"

using namespace lforge;

TEST_SUITE("bounds") {

TEST_CASE("thm1 bound values") {
    CHECK(thm1_bound(16) == doctest::Approx(16.4238).epsilon(1e-5));
    CHECK(thm1_bound(18) == doctest::Approx(18.47755).epsilon(1e-6));
    CHECK(thm1_bound(100) == doctest::Approx(102.9419).epsilon(1e-6));
    CHECK(thm1_bound(150) == doctest::Approx(154.5521).epsilon(1e-6));
    CHECK(std::fabs(thm1_bound(1000) - 1034.965184) < 1e-5);
    CHECK(thm1_bound(1000000) == doctest::Approx(1051892.58).epsilon(1e-8));
    const double n = 1000, ln = std::log(n);
    CHECK(thm1_bound(1000, 50) == doctest::Approx(n * std::exp(ln / (50 * std::log(ln)))));
    CHECK_THROWS_AS(thm1_bound(15), Error);
    CHECK_THROWS_AS(thm1_bound(100, 0), Error);
}

TEST_CASE("thm1 bound increases and exceeds n") {
    double prev = 0;
    for (uint64_t n = 16; n <= 5000; ++n) {
        const double b = thm1_bound(n);
        CHECK(b > static_cast<double>(n));
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("thm2 bound values") {
    CHECK(std::fabs(thm2_bound(101, 10, 1) - 219.448987) < 1e-5);
    CHECK(std::fabs(thm2_bound(101, 10, 101 * 101) - 221.448987) < 1e-5);
    CHECK(thm2_bound(1093, 2, 1) == doctest::Approx(706.98248).epsilon(1e-7));
    CHECK_THROWS_AS(thm2_bound(3, 10, 1), Error);
    CHECK_THROWS_AS(thm2_bound(9, 10, 1), Error);
    CHECK_THROWS_AS(thm2_bound(101, 1, 1), Error);
    CHECK_THROWS_AS(thm2_bound(101, 10, 0), Error);
}

TEST_CASE("lemma8 bound values") {
    CHECK(lemma8_bound(101, std::log(2.0), 100) == doctest::Approx(304.18688).epsilon(1e-7));
    CHECK(lemma8_bound(1093, std::log(2.0), 2) == doctest::Approx(489.97761).epsilon(1e-7));
    CHECK(lemma8_bound(5, 1.0, 2) == doctest::Approx(3.2470972).epsilon(1e-7));
    CHECK_THROWS_AS(lemma8_bound(101, 1.0, 1), Error);
    CHECK_THROWS_AS(lemma8_bound(2, 1.0, 5), Error);
}

TEST_CASE("classical bounds") {
    CHECK(classical_bounds(13).carmichael == 12);
    CHECK(classical_bounds(13).zsigmondy == 14);
    CHECK(classical_bounds(6).carmichael == 5);
    CHECK(classical_bounds(6).zsigmondy == 7);
    CHECK_THROWS_AS(classical_bounds(0), Error);
}

TEST_CASE("harness rows") {
    const auto rows = thm1_harness(LehmerPair(9, 2), 40);
    REQUIRE(rows.size() == 25);
    CHECK(rows.front().n == 16);
    const auto& r18 = rows[2];
    CHECK(r18.n == 18);
    CHECK(r18.gpf == 19);
    CHECK(r18.exact);
    CHECK(r18.phi_digits == 2);
    CHECK(r18.ratio == doctest::Approx(1.02827).epsilon(1e-5));
    for (const auto& r : rows) {
        CHECK(r.exact);
        CHECK(r.meets_carmichael);
        CHECK(r.carmichael == r.n - 1);
    }
    CHECK_THROWS_AS(thm1_harness(LehmerPair(2, 4), 20), Error);
}

}  // TEST_SUITE
