#include <cmath>
#include <numeric>

#include "doctest.h"
#include "lforge/cyclotomic.hpp"
#include "lforge/error.hpp"
#include "lforge/sequences.hpp"
#include "oracles.hpp"

using namespace lforge;

TEST_SUITE("cyclotomic") {

TEST_CASE("arith_profile") {
    const ArithProfile p = arith_profile(60);
    CHECK(p.phi == 16);
    CHECK(p.omega == 3);
    CHECK(p.q == 8);
    CHECK(p.mobius == 0);
    CHECK(p.divisors.size() == 12);
    CHECK(arith_profile(1).q == 1);
    CHECK_THROWS_AS(arith_profile(0), Error);
}

TEST_CASE("reference cyclotomic values") {
    CHECK(cyclo_value(LehmerPair(9, 2), 100).value == 1098438933505);
    CHECK(cyclo_value(LehmerPair(9, 2), 18).value == 57);
    CHECK(cyclo_value(LehmerPair(1, -1), 13).value == 233);
    CHECK(cyclo_value(LehmerPair(9, 2), 1).value == 1);
    CHECK(cyclo_value(LehmerPair(9, 2), 2).value == 3);
    CHECK(cyclo_value(integer_pair(3, -2), 30).value == 3571);
    CHECK_THROWS_AS(cyclo_value(LehmerPair(1, -1), 2), Error);
    CHECK_THROWS_AS(cyclo_value(LehmerPair(1, -1), 0), Error);
}

TEST_CASE("u~_n is the product of Phi_d over d | n, d >= 3") {
    CHECK(cyclo_identity_check(LehmerPair(1, -1), 12));
    CHECK(cyclo_identity_check(LehmerPair(9, 2), 4));
    CHECK(cyclo_identity_check(LehmerPair(5, 1), 1));
    for (const auto& pair : pair_grid(8, 8)) {
        const auto terms = lehmer_terms(pair, 120);
        for (uint64_t n = 1; n <= 120; ++n) {
            BigInt product = 1;
            for (uint64_t d : oracle::divisors(n)) {
                if (d >= 3) product *= cyclo_value(pair, d, terms).value;
            }
            if (product != terms[n]) FAIL("pair " << pair.to_string() << " n " << n);
        }
    }
}

TEST_CASE("Moebius product is integral up to n = 200 on the grid") {
    for (const auto& pair : pair_grid(8, 8)) {
        const auto terms = lehmer_terms(pair, 200);
        for (uint64_t n = 3; n <= 200; n += 1) CHECK_NOTHROW(cyclo_value(pair, n, terms));
    }
}

TEST_CASE("integer pairs match the cyclotomic polynomial coefficients") {
    for (long a = 2; a <= 7; ++a) {
        for (long b = -a + 1; b < a; ++b) {
            if (b == 0 || a + b == 0 || std::gcd(a, b) != 1) continue;
            const LehmerPair pair = integer_pair(a, b);
            const auto terms = lehmer_terms(pair, 120);
            for (uint64_t n = 1; n <= 120; ++n) {
                CHECK(cyclo_value(pair, n, terms).value == oracle::cyclotomic_homogeneous(n, a, b));
            }
        }
    }
}

TEST_CASE("scaling alpha and beta by sqrt g multiplies Phi_n by g^(phi(n)/2)") {
    for (const auto& pair : pair_grid(4, 4)) {
        for (int64_t g : {2, 3, 5, 6}) {
            const LehmerPair scaled(g * pair.r(), g * pair.q());
            CHECK(normalize_pair(scaled.r(), scaled.q()).g == g);
            for (uint64_t n = 3; n <= 40; ++n) {
                const BigInt expect = pow_big(BigInt(static_cast<long>(g)), oracle::phi(n) / 2) * cyclo_value(pair, n).value;
                CHECK(cyclo_value(scaled, n).value == expect);
            }
        }
    }
}

TEST_CASE("size band examples") {
    const SizeBand b100 = size_band(LehmerPair(9, 2), 100);
    CHECK(b100.actual == doctest::Approx(27.7249111364).epsilon(1e-11));
    CHECK(b100.center == doctest::Approx(100 * std::log(2.0) * 0.4).epsilon(1e-12));
    CHECK(b100.within);
    CHECK(b100.above_floor);
    CHECK(b100.floor == doctest::Approx(20 * std::log(2.0)).epsilon(1e-12));

    const SizeBand b6 = size_band(LehmerPair(9, 2), 6);
    CHECK(b6.actual == doctest::Approx(std::log(3.0)));
    CHECK(b6.above_floor);

    const SizeBand f12 = size_band(LehmerPair(1, -1), 12);
    CHECK(f12.actual == doctest::Approx(std::log(6.0)));
    CHECK(f12.center == doctest::Approx(4 * 0.48121182505960347));
    CHECK(f12.within);
    CHECK_THROWS_AS(size_band(LehmerPair(9, 2), 2), Error);
}

TEST_CASE("integer pairs sit above the floor") {
    for (int64_t a = 2; a <= 12; ++a) {
        for (int64_t b = 1; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (uint64_t n = 3; n <= 200; ++n) CHECK(size_band(integer_pair(a, b), n).above_floor);
        }
    }
}

TEST_CASE("the floor can fail for non-integer pairs") {
    // Phi_13 = +-1 here, one of the finitely many Lehmer exceptions
    const SizeBand b = size_band(LehmerPair(-1, -2), 13);
    CHECK(b.actual == doctest::Approx(0.0));
    CHECK_FALSE(b.above_floor);
}

}  // TEST_SUITE
