#include <cmath>

#include "doctest.h"
#include "lforge/error.hpp"
#include "lforge/pairs.hpp"

using namespace lforge;

namespace {

bool has(const std::vector<PairIssue>& v, PairIssue i) { return std::find(v.begin(), v.end(), i) != v.end(); }

bool squarefree(const BigInt& d) {
    BigInt a = abs(d);
    for (unsigned long p = 2; p * p <= a; ++p) {
        if (mpz_divisible_ui_p(a.get_mpz_t(), p * p)) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("pairs") {

TEST_CASE("validate_pair failures and warnings") {
    CHECK(validate_pair(1, -1).ok);
    CHECK(has(validate_pair(0, 3).failures, PairIssue::zero_r));
    CHECK(has(validate_pair(3, 0).failures, PairIssue::zero_q));
    for (int k = 1; k <= 4; ++k) CHECK(has(validate_pair(k * 5, 5).failures, PairIssue::degenerate));
    CHECK(has(validate_pair(2, 1).failures, PairIssue::equal_abs_r_s));
    CHECK(has(validate_pair(int64_t{1} << 31, 1).failures, PairIssue::out_of_range));

    const PairValidation nc = validate_pair(6, 4);
    CHECK(nc.ok);
    CHECK(nc.failures.empty());
    CHECK(has(nc.warnings, PairIssue::non_coprime));
    CHECK_THROWS_AS(LehmerPair(4, 1), Error);
}

TEST_CASE("normalize_pair removes the common factor") {
    const NormalizedPair np = normalize_pair(6, 4);
    CHECK(np.g == 2);
    CHECK(np.pair == LehmerPair(3, 2));
    for (int64_t r = -12; r <= 12; ++r) {
        for (int64_t q = -12; q <= 12; ++q) {
            if (!validate_pair(r, q).ok) continue;
            const NormalizedPair n = normalize_pair(r, q);
            CHECK(validate_pair(n.pair.r(), n.pair.q()).warnings.empty());
            CHECK(n.pair.r() * n.g == r);
        }
    }
}

TEST_CASE("classify_pair decomposes rs = m^2 d") {
    const PairClass fib = classify_pair(LehmerPair(1, -1));
    CHECK(fib.s == 5);
    CHECK(fib.d == 5);
    CHECK(fib.m == 1);
    CHECK(fib.is_lucas);
    CHECK(fib.is_real);
    CHECK_FALSE(fib.is_integer);

    const PairClass two = classify_pair(LehmerPair(9, 2));
    CHECK(two.is_integer);
    CHECK(two.sqrt_r == 3);
    CHECK(two.sqrt_s == 1);
    CHECK(two.m == 3);
    CHECK(two.d == 1);

    const PairClass cx = classify_pair(LehmerPair(1, 2));
    CHECK(cx.d == -7);
    CHECK_FALSE(cx.is_real);

    for (const auto& pair : pair_grid(8, 8)) {
        const PairClass c = classify_pair(pair);
        CHECK(c.m * c.m * c.d == pair.rs());
        CHECK(squarefree(c.d));
        CHECK(sgn(c.m) > 0);
    }
    // a non-word-size rs still factors
    const PairClass wide = classify_pair(LehmerPair(2147483647, -2147483646));
    CHECK(wide.m * wide.m * wide.d == LehmerPair(2147483647, -2147483646).rs());
}

TEST_CASE("log_abs_alpha in the three sign regimes") {
    CHECK(log_abs_alpha(LehmerPair(9, 2)) == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(log_abs_alpha(LehmerPair(1, -1)) == doctest::Approx(0.48121182505960347).epsilon(1e-12));
    CHECK(log_abs_alpha(LehmerPair(1, 2)) == doctest::Approx(0.34657359027997264).epsilon(1e-12));
    // R, s both negative: alpha, beta purely imaginary
    CHECK(log_abs_alpha(LehmerPair(-1, 1)) == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
}

TEST_CASE("height_of_ratio examples") {
    CHECK(height_of_ratio(LehmerPair(9, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(height_of_ratio(LehmerPair(1, -1)) == doctest::Approx(0.48121182505960347).epsilon(1e-12));
    CHECK(height_of_ratio(LehmerPair(5, 1)) == doctest::Approx(0.48121182505960347).epsilon(1e-12));
    // ratio 3/2 for alpha = 3, beta = 2
    CHECK(height_of_ratio(integer_pair(3, 2)) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    // ratio -2 for alpha = 2, beta = -1
    CHECK(height_of_ratio(integer_pair(2, -1)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // complex pair: roots on the unit circle, height from the leading coefficient
    CHECK(height_of_ratio(LehmerPair(1, 2)) == doctest::Approx(std::log(2.0) / 2).epsilon(1e-12));
}

TEST_CASE("height never exceeds log|alpha| on a wide grid") {
    for (int64_t r = -40; r <= 40; ++r) {
        for (int64_t q = -40; q <= 40; ++q) {
            if (!validate_pair(r, q).ok) continue;
            const LehmerPair pair(r, q);
            CHECK(height_of_ratio(pair) <= log_abs_alpha(pair) + 1e-9);
        }
    }
}

TEST_CASE("parse_pair accepts R,Q and nothing else") {
    CHECK(parse_pair("1,-1") == LehmerPair(1, -1));
    CHECK(parse_pair("-7,6") == LehmerPair(-7, 6));
    for (const char* bad : {"1,x", "1", ",1", "1,", "+1,2", "1, 2", "1,2,3", "", "99999999999999999999,1"}) {
        CHECK_THROWS_AS(parse_pair(bad), Error);
    }
    try {
        parse_pair("1,x");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
    CHECK_THROWS_AS(parse_pair("4,1"), Error);
}

TEST_CASE("pair_grid is sorted, valid and coprime") {
    const auto grid = pair_grid(8, 8);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
    for (const auto& p : grid) CHECK(p.coprime());
    CHECK(std::find(grid.begin(), grid.end(), LehmerPair(1, -1)) != grid.end());
    CHECK(integer_pair(2, 1) == LehmerPair(9, 2));
}

}  // TEST_SUITE
