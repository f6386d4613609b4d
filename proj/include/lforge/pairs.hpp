#pragma once

// Lucas/Lehmer pairs keyed by R = (alpha+beta)^2 and Q = alpha*beta.
//
// alpha = (sqrt(R) + sqrt(s))/2, beta = (sqrt(R) - sqrt(s))/2 with s = R - 4Q,
// so (alpha - beta)^2 = s and (alpha^2 - beta^2)^2 = R*s. All arithmetic on a
// pair is integer arithmetic in R and Q; alpha itself only appears as the
// floating-point magnitude |alpha|.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lforge/bigint.hpp"

namespace lforge {

enum class PairIssue { zero_r, zero_q, degenerate, equal_abs_r_s, non_coprime, out_of_range };

std::string_view to_string(PairIssue issue);

struct PairValidation {
    bool ok = true;
    std::vector<PairIssue> failures;
    std::vector<PairIssue> warnings;  // non_coprime only; normalize_pair repairs it
};

/// |R| and |Q| must stay below this so that R - 4Q and Q^2 fit in 64 bits.
inline constexpr int64_t kMaxPairComponent = int64_t{1} << 31;

class LehmerPair {
public:
    /// Throws Error(invalid_pair) when validate_pair reports a failure.
    LehmerPair(int64_t r, int64_t q);

    int64_t r() const { return r_; }
    int64_t q() const { return q_; }
    int64_t s() const { return r_ - 4 * q_; }
    BigInt rs() const;
    bool coprime() const;

    std::string to_string() const;  // "R,Q"

    friend bool operator==(const LehmerPair&, const LehmerPair&) = default;
    friend auto operator<=>(const LehmerPair&, const LehmerPair&) = default;

private:
    int64_t r_;
    int64_t q_;
};

struct PairClass {
    BigInt s;
    BigInt rs;
    BigInt m;     // rs = m^2 * d
    BigInt d;     // squarefree, sign of rs
    bool is_lucas = false;    // R is a perfect square, alpha + beta integral
    bool is_real = false;     // R > 0 and s > 0
    bool is_integer = false;  // R and s both perfect squares: alpha, beta are integers
    int64_t sqrt_r = 0;       // valid when is_lucas
    int64_t sqrt_s = 0;       // valid when is_integer
};

PairValidation validate_pair(int64_t r, int64_t q);

bool is_degenerate(int64_t r, int64_t q);

struct NormalizedPair {
    LehmerPair pair;
    int64_t g;
};

/// Divides out g = gcd(R, Q). Zero components raise Error(invalid_pair).
NormalizedPair normalize_pair(int64_t r, int64_t q);

/// Throws Error(budget) if the squarefree kernel of rs cannot be extracted.
PairClass classify_pair(const LehmerPair& pair);

/// log|alpha| with |alpha| >= |beta|.
double log_abs_alpha(const LehmerPair& pair);

/// Absolute logarithmic height of alpha/beta.
double height_of_ratio(const LehmerPair& pair);

/// Parses "R,Q" (decimal, optional leading minus). Throws Error(parse).
LehmerPair parse_pair(std::string_view text);

/// Every (R, Q) with |R| <= r_max, |Q| <= q_max that is valid and coprime,
/// in lexicographic order.
std::vector<LehmerPair> pair_grid(int64_t r_max, int64_t q_max);

/// The pair with alpha = a, beta = b for integers a > b (R = (a+b)^2, Q = ab).
LehmerPair integer_pair(int64_t a, int64_t b);

}  // namespace lforge
