#include <numeric>

#include "doctest.h"
#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "lforge/padic.hpp"
#include "lforge/sequences.hpp"
#include "oracles.hpp"

using namespace lforge;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected lforge::Error");
    return ErrorKind::internal_invariant;
}

}  // namespace

TEST_SUITE("padic") {

TEST_CASE("ord_int") {
    CHECK(ord_int(BigInt(2), BigInt(96)).value == 5u);
    CHECK(ord_int(BigInt(3), BigInt(-54)).value == 3u);
    CHECK(ord_int(BigInt(7), BigInt(0)).infinite());
    CHECK(ord_u64(5, 75025) == 2);
    CHECK(kind_of([] { ord_int(BigInt(9), BigInt(81)); }) == ErrorKind::domain);
}

TEST_CASE("kronecker matches Legendre by squares") {
    CHECK(kronecker(BigInt(5), 11) == 1);
    CHECK(kronecker(BigInt(5), 13) == -1);
    CHECK(kronecker(BigInt(5), 5) == 0);
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        for (long d = -60; d <= 60; ++d) CHECK(kronecker(BigInt(d), p) == oracle::legendre_by_squares(d, p));
    }
}

TEST_CASE("rank of apparition examples") {
    auto r11 = rank_of_apparition(LehmerPair(1, -1), 11);
    CHECK(r11.ell == 10);
    CHECK(r11.symbol == 1);
    CHECK(r11.divides_target);
    auto r13 = rank_of_apparition(LehmerPair(1, -1), 13);
    CHECK(r13.ell == 7);
    CHECK(r13.symbol == -1);
    CHECK(r13.divides_target);
    CHECK(rank_of_apparition(LehmerPair(9, 2), 7).ell == 3);
    // p | s gives ell = p; p | R gives ell = 2p
    CHECK(rank_of_apparition(LehmerPair(1, -1), 5).ell == 5);
    CHECK(rank_of_apparition(LehmerPair(1, -1), 5).divides_target);
    CHECK(rank_of_apparition(LehmerPair(9, 2), 3).ell == 6);
    CHECK(rank_of_apparition(LehmerPair(9, 2), 3).divides_target);
    CHECK(kind_of([] { rank_of_apparition(LehmerPair(9, 2), 4); }) == ErrorKind::domain);
    CHECK(kind_of([] { rank_of_apparition(LehmerPair(5, 3), 3); }) == ErrorKind::unit);
}

TEST_CASE("rank is the least index with p | u~_n") {
    for (const auto& pair : pair_grid(6, 6)) {
        const auto terms = lehmer_terms(pair, 200);
        for (uint64_t p = 3; p < 90; p += 2) {
            if (!modarith::is_prime_u64(p) || pair.q() % static_cast<int64_t>(p) == 0) continue;
            const auto rec = rank_of_apparition(pair, p);
            uint64_t first = 0;
            for (uint64_t n = 1; n <= 200 && first == 0; ++n) {
                if (mpz_divisible_ui_p(terms[n].get_mpz_t(), p)) first = n;
            }
            CHECK(rec.ell == first);
            CHECK(rec.divides_target);
        }
    }
}

TEST_CASE("ord_u examples") {
    CHECK(ord_u(LehmerPair(9, 2), 7, 21).ord.value == 2u);
    CHECK(ord_u(LehmerPair(9, 2), 7, 21).method == OrdMethod::fast);
    CHECK(ord_u(LehmerPair(1, -1), 11, 55).ord.value == 0u);
    const auto f25 = ord_u(LehmerPair(1, -1), 5, 25);
    CHECK(f25.ord.value == 2u);
    CHECK(f25.method == OrdMethod::fallback);
    // u~_6 = 21 for (9,2)
    CHECK(ord_u(LehmerPair(9, 2), 3, 6).ord.value == 1u);
    CHECK(ord_u(LehmerPair(1, -1), 3, 0).ord.infinite());
}

TEST_CASE("fast ord_u agrees with the exact valuation") {
    for (const auto& pair : pair_grid(6, 6)) {
        const auto terms = lehmer_terms(pair, 150);
        for (uint64_t p = 3; p < 40; p += 2) {
            if (!modarith::is_prime_u64(p) || pair.q() % static_cast<int64_t>(p) == 0) continue;
            for (uint64_t n = 1; n <= 150; ++n) {
                const auto got = ord_u(pair, p, n);
                CHECK(got.ord.value == oracle::ord_p(terms[n], p));
                CHECK(ord_u_exact(pair, p, n).ord == got.ord);
            }
        }
    }
}

TEST_CASE("ord_power_difference") {
    CHECK(ord_power_difference(2, 1, 3, 6).ord.value == 2u);
    for (int64_t a = 2; a <= 9; ++a) {
        for (int64_t b = -a + 1; b < a; ++b) {
            if (b == 0 || a + b == 0 || std::gcd(a, b) != 1) continue;
            for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
                if (a % static_cast<int64_t>(p) == 0 || b % static_cast<int64_t>(p) == 0) continue;
                for (uint64_t n = 1; n <= 80; ++n) {
                    const unsigned expect = oracle::ord_p(oracle::ipow(a, n) - oracle::ipow(b, n), p);
                    CHECK(ord_power_difference(a, b, p, n).ord.value == expect);
                    CHECK(ord_power_difference_escalating(a, b, p, n) == expect);
                }
            }
        }
    }
    CHECK(kind_of([] { ord_power_difference(6, 1, 3, 4); }) == ErrorKind::domain);
    CHECK(kind_of([] { ord_power_difference(2, 1, 9, 4); }) == ErrorKind::domain);
}

TEST_CASE("residue order") {
    CHECK(residue_order(LehmerPair(1, -1), 13) == 7);
    CHECK(residue_order(LehmerPair(1, -1), 11) == 10);
    CHECK(residue_order(LehmerPair(9, 2), 7) == 3);
    // unramified p: the residue order equals the rank
    for (const auto& pair : pair_grid(6, 6)) {
        const auto cls = classify_pair(pair);
        for (uint64_t p = 3; p < 200; p += 2) {
            if (!modarith::is_prime_u64(p)) continue;
            if (mpz_divisible_ui_p(cls.rs.get_mpz_t(), p) || pair.q() % static_cast<int64_t>(p) == 0) continue;
            CHECK(residue_order(pair, cls, p) == rank_of_apparition(pair, cls, p).ell);
        }
    }
}

TEST_CASE("verify_thm2_point") {
    const auto w = verify_thm2_point(2, 1, 1093);
    CHECK(w.ord == 2);
    CHECK(w.bound == doctest::Approx(706.98248).epsilon(1e-7));
    CHECK(w.ok);
    CHECK(verify_thm2_point(2, 1, 5).ord == 1);
    CHECK(verify_thm2_point(10, 3, 7).ord == 1);
    CHECK(verify_thm2_point(3, 1, 11).ord == 2);  // 3^5 = 243 = 1 + 2 * 11^2
    CHECK(kind_of([] { verify_thm2_point(3, 2, 3); }) == ErrorKind::domain);
    CHECK(kind_of([] { verify_thm2_point(2, 4, 5); }) == ErrorKind::domain);
}

}  // TEST_SUITE
