#include "lforge/pairs.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "lforge/error.hpp"
#include "lforge/factorization.hpp"
#include "lforge/modarith.hpp"

namespace lforge {

namespace {

int64_t abs64(int64_t v) { return v < 0 ? -v : v; }

bool is_square(const BigInt& v) { return sgn(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()); }

std::string join_issues(const std::vector<PairIssue>& issues) {
    std::string out;
    for (auto issue : issues) {
        if (!out.empty()) out += ", ";
        out += to_string(issue);
    }
    return out;
}

}  // namespace

std::string_view to_string(PairIssue issue) {
    switch (issue) {
        case PairIssue::zero_r: return "zero-R";
        case PairIssue::zero_q: return "zero-Q";
        case PairIssue::degenerate: return "degenerate";
        case PairIssue::equal_abs_r_s: return "equal-abs-r-s";
        case PairIssue::non_coprime: return "non-coprime";
        case PairIssue::out_of_range: return "out-of-range";
    }
    return "unknown";
}

bool is_degenerate(int64_t r, int64_t q) {
    if (q == 0) return false;
    // R/Q in {0,1,2,3,4}  <=>  alpha/beta + beta/alpha = R/Q - 2 in {-2,...,2}
    for (int64_t k = 0; k <= 4; ++k) {
        if (r == k * q) return true;
    }
    return false;
}

PairValidation validate_pair(int64_t r, int64_t q) {
    PairValidation v;
    if (abs64(r) >= kMaxPairComponent || abs64(q) >= kMaxPairComponent) {
        v.failures.push_back(PairIssue::out_of_range);
        v.ok = false;
        return v;
    }
    if (r == 0) v.failures.push_back(PairIssue::zero_r);
    if (q == 0) v.failures.push_back(PairIssue::zero_q);
    if (r != 0 && q != 0) {
        if (is_degenerate(r, q)) v.failures.push_back(PairIssue::degenerate);
        if (abs64(r) == abs64(r - 4 * q)) v.failures.push_back(PairIssue::equal_abs_r_s);
        if (std::gcd(r, q) != 1) v.warnings.push_back(PairIssue::non_coprime);
    }
    v.ok = v.failures.empty();
    return v;
}

LehmerPair::LehmerPair(int64_t r, int64_t q) : r_(r), q_(q) {
    auto v = validate_pair(r, q);
    if (!v.ok) {
        throw Error(ErrorKind::invalid_pair,
                    "invalid pair " + std::to_string(r) + "," + std::to_string(q) + ": " + join_issues(v.failures));
    }
}

BigInt LehmerPair::rs() const { return big_from_i64(r_) * big_from_i64(s()); }

bool LehmerPair::coprime() const { return std::gcd(r_, q_) == 1; }

std::string LehmerPair::to_string() const { return std::to_string(r_) + "," + std::to_string(q_); }

NormalizedPair normalize_pair(int64_t r, int64_t q) {
    if (r == 0 || q == 0) throw Error(ErrorKind::invalid_pair, "normalize_pair: zero component");
    int64_t g = std::gcd(r, q);
    return NormalizedPair{LehmerPair(r / g, q / g), g};
}

PairClass classify_pair(const LehmerPair& pair) {
    PairClass c;
    c.s = big_from_i64(pair.s());
    c.rs = pair.rs();

    BigInt abs_rs = abs(c.rs);
    FactorBudget budget;
    if (!fits_u64(abs_rs)) budget.rho_iterations = 100 * kDefaultRhoIterations;
    Factorization f = factorize(abs_rs, budget);
    if (!f.complete()) throw Error(ErrorKind::budget, "classify_pair: cannot factor rs = " + to_dec(c.rs));

    c.m = 1;
    c.d = sgn(c.rs) < 0 ? -1 : 1;
    for (const auto& pp : f.factors) {
        c.m *= pow_big(pp.prime, pp.exponent / 2);
        if (pp.exponent % 2 == 1) c.d *= pp.prime;
    }

    const BigInt r = big_from_i64(pair.r());
    c.is_lucas = is_square(r);
    c.is_real = pair.r() > 0 && pair.s() > 0;
    c.is_integer = c.is_lucas && is_square(c.s);
    if (c.is_lucas) c.sqrt_r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(pair.r()))));
    if (c.is_integer) c.sqrt_s = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(pair.s()))));
    return c;
}

double log_abs_alpha(const LehmerPair& pair) {
    const long double r = static_cast<long double>(pair.r());
    const long double s = static_cast<long double>(pair.s());
    if ((r > 0) == (s > 0)) {
        // alpha = (sqrt R + sqrt s)/2, both real or both purely imaginary
        long double mag = (std::sqrt(std::fabs(r)) + std::sqrt(std::fabs(s))) / 2;
        return static_cast<double>(std::log(mag));
    }
    // complex conjugate (up to sign) roots: |alpha| = |beta| = sqrt|Q|
    return static_cast<double>(std::log(std::fabs(static_cast<long double>(pair.q()))) / 2);
}

double height_of_ratio(const LehmerPair& pair) {
    const PairClass cls = classify_pair(pair);
    const BigInt q = big_from_i64(pair.q());
    const BigInt mid = big_from_i64(pair.r() - 2 * pair.q());  // alpha^2 + beta^2

    if (cls.d == 1) {
        // alpha/beta = (R - 2Q + m) / (2Q), a rational number
        BigInt num = mid + cls.m;
        BigInt den = 2 * q;
        BigInt g = gcd(num, den);
        num /= g;
        den /= g;
        return std::max(log_abs(num), log_abs(den));
    }

    // Q x^2 - (R - 2Q) x + Q is, after removing its content, the minimal
    // polynomial of alpha/beta; its discriminant is R(R - 4Q) = rs.
    const BigInt content = gcd(q, mid);
    const double log_lead = log_abs(q) - log_abs(content);
    double roots_term = 0.0;
    if (sgn(cls.rs) > 0) {
        const long double b = std::fabs(static_cast<long double>(mid.get_d()));
        const long double disc = std::sqrt(static_cast<long double>(cls.rs.get_d()));
        const long double a2 = 2 * std::fabs(static_cast<long double>(q.get_d()));
        const long double big_root = (b + disc) / a2;
        const long double small_root = 1.0L / big_root;  // product of the roots is 1
        roots_term = static_cast<double>(std::log(std::max(1.0L, big_root)) + std::log(std::max(1.0L, small_root)));
    }
    // rs < 0: complex conjugate roots of modulus 1 contribute nothing
    return (log_lead + roots_term) / 2;
}

LehmerPair parse_pair(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::parse, "pair must be R,Q: '" + std::string(text) + "'");
    auto parse_one = [&](std::string_view part) {
        int64_t v = 0;
        if (part.empty() || part.front() == '+') {
            throw Error(ErrorKind::parse, "bad integer '" + std::string(part) + "' in pair");
        }
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw Error(ErrorKind::parse, "bad integer '" + std::string(part) + "' in pair");
        }
        return v;
    };
    return LehmerPair(parse_one(text.substr(0, comma)), parse_one(text.substr(comma + 1)));
}

std::vector<LehmerPair> pair_grid(int64_t r_max, int64_t q_max) {
    std::vector<LehmerPair> grid;
    for (int64_t r = -r_max; r <= r_max; ++r) {
        for (int64_t q = -q_max; q <= q_max; ++q) {
            auto v = validate_pair(r, q);
            if (v.ok && v.warnings.empty()) grid.emplace_back(r, q);
        }
    }
    return grid;
}

LehmerPair integer_pair(int64_t a, int64_t b) { return LehmerPair((a + b) * (a + b), a * b); }

}  // namespace lforge
