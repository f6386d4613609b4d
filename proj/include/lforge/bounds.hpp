#pragma once

#include <cstdint>
#include <vector>

#include "lforge/bigint.hpp"
#include "lforge/factorization.hpp"
#include "lforge/pairs.hpp"

namespace lforge {

inline constexpr double kThm1Divisor = 104.0;

/// n exp(log n / (divisor log log n)), n >= 16.
double thm1_bound(uint64_t n, double divisor = kThm1Divisor);

/// p exp(-log p / (52 log log p)) log a + ord_p n, p >= 5 prime, a >= 2.
double thm2_bound(uint64_t p, int64_t a, uint64_t n);

/// p exp(-log p / (51.9 log log p)) log|alpha| log n, p >= 5, n >= 2.
double lemma8_bound(uint64_t p, double log_abs_alpha, uint64_t n);

struct ClassicalBounds {
    uint64_t carmichael = 0;  // n - 1
    uint64_t zsigmondy = 0;   // n + 1
};

ClassicalBounds classical_bounds(uint64_t n);

enum class BoundStatus { exact, lower_bound };

struct BoundComparison {
    uint64_t n = 0;
    std::size_t phi_digits = 0;
    BigInt gpf;
    bool exact = true;
    double thm1 = 0.0;
    uint64_t carmichael = 0;
    double ratio = 0.0;
    BoundStatus status = BoundStatus::exact;
    bool meets_carmichael = true;  // gpf >= n - 1; only meaningful when exact
};

/// One row per 16 <= n <= n_to, sorted by n.
std::vector<BoundComparison> thm1_harness(const LehmerPair& pair, uint64_t n_to, const FactorBudget& budget = {},
                                          unsigned threads = 1);

}  // namespace lforge
