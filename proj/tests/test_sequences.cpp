#include <numeric>

#include "doctest.h"
#include "lforge/error.hpp"
#include "lforge/sequences.hpp"
#include "oracles.hpp"

using namespace lforge;

TEST_SUITE("sequences") {

TEST_CASE("Lehmer numbers of reference pairs") {
    const std::vector<long> fib{0, 1, 1, 2, 3, 5, 8};
    for (uint64_t n = 0; n < fib.size(); ++n) CHECK(lehmer_u(LehmerPair(1, -1), n) == fib[n]);
    CHECK(lehmer_u(LehmerPair(9, 2), 6) == 21);
    // frozen from exact algebra in Q(sqrt R, sqrt s)
    const std::vector<long> cx{0, 1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23, 45};
    const std::vector<long> neg{0, 1, 1, -5, -7, 31, 45, -197, -287, 1255, 1829, -7997, -11655};
    const std::vector<long> lucas5{0, 1, 1, 4, 3, 11, 8, 29, 21, 76, 55, 199, 144};
    for (uint64_t n = 0; n <= 12; ++n) {
        CHECK(lehmer_u(LehmerPair(1, 2), n) == cx[n]);
        CHECK(lehmer_u(LehmerPair(-3, 2), n) == neg[n]);
        CHECK(lehmer_u(LehmerPair(5, 1), n) == lucas5[n]);
    }
}

TEST_CASE("step-4 recurrence matches the two-term recurrence on the grid") {
    for (const auto& pair : pair_grid(8, 8)) {
        const auto expect = oracle::lehmer_two_term(pair.r(), pair.q(), 300);
        const auto got = lehmer_terms(pair, 300);
        REQUIRE(got.size() == 301);
        for (uint64_t n = 0; n <= 300; ++n) {
            if (got[n] != expect[n]) FAIL("pair " << pair.to_string() << " n " << n);
        }
        CHECK(lehmer_u(pair, 257) == expect[257]);
    }
}

TEST_CASE("lucas_u equals (a^n - b^n)/(a - b) for integer pairs") {
    CHECK(lucas_u(LehmerPair(1, -1), 12) == 144);
    CHECK(lucas_u(LehmerPair(9, 2), 11) == 2047);
    for (long a = 2; a <= 12; ++a) {
        for (long b = -a + 1; b < a; ++b) {
            if (b == 0 || a + b == 0 || std::gcd(a, b) != 1) continue;
            const LehmerPair pair = integer_pair(a, b);
            for (unsigned long n = 1; n <= 60; ++n) CHECK(lucas_u(pair, n) == oracle::lucas_direct(a, b, n));
        }
    }
    CHECK_THROWS_AS(lucas_u(LehmerPair(2, -1), 3), Error);
    try {
        lucas_u(LehmerPair(2, -1), 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kind);
    }
}

TEST_CASE("lehmer_u_mod agrees with the exact value") {
    CHECK(lehmer_u_mod(LehmerPair(1, -1), 10, 11) == 0);
    CHECK(lehmer_u_mod(LehmerPair(9, 2), 3, 7) == 0);
    CHECK(lehmer_u_mod(LehmerPair(9, 2), 0, 5) == 0);
    const auto grid = pair_grid(8, 8);
    for (std::size_t i = 0; i < grid.size(); i += 7) {
        const auto exact = lehmer_terms(grid[i], 200);
        for (uint64_t m : {2ULL, 3ULL, 10ULL, 97ULL, 256ULL, 999ULL, 1000ULL}) {
            for (uint64_t n = 0; n <= 200; ++n) {
                BigInt r;
                mpz_fdiv_r_ui(r.get_mpz_t(), exact[n].get_mpz_t(), m);
                CHECK(lehmer_u_mod(grid[i], n, m) == to_u64(r));
            }
        }
        const BigInt big_m = pow_big(BigInt(10007), 5);
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), exact[199].get_mpz_t(), big_m.get_mpz_t());
        CHECK(lehmer_u_mod(grid[i], 199, big_m) == r);
    }
    CHECK_THROWS_AS(lehmer_u_mod(LehmerPair(1, -1), 5, 1), Error);
    CHECK_THROWS_AS(lehmer_u_mod(LehmerPair(1, -1), 5, BigInt(1)), Error);
}

TEST_CASE("walker steps through the residues") {
    const LehmerPair pair(-3, 2);
    const auto exact = lehmer_terms(pair, 100);
    LehmerModWalker walk(pair, 13);
    for (uint64_t n = 0; n <= 100; ++n) {
        CHECK(walk.index() == n);
        BigInt r;
        mpz_fdiv_r_ui(r.get_mpz_t(), exact[n].get_mpz_t(), 13);
        CHECK(walk.value() == to_u64(r));
        walk.advance();
    }
}

TEST_CASE("divisibility chain and gcd identity for Lucas numbers") {
    const LehmerPair pair = integer_pair(5, 3);
    std::vector<BigInt> u(121);
    for (uint64_t n = 0; n <= 120; ++n) u[n] = lucas_u(pair, n);
    for (uint64_t m = 1; m <= 120; ++m) {
        for (uint64_t n = m; n <= 120; ++n) {
            if (n % m == 0) CHECK(mpz_divisible_p(u[n].get_mpz_t(), u[m].get_mpz_t()));
            CHECK(gcd(u[m], u[n]) == abs(u[std::gcd(m, n)]));
        }
    }
}

}  // TEST_SUITE
