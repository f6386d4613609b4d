#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lforge/bigint.hpp"
#include "lforge/pairs.hpp"

namespace lforge {

struct ArithProfile {
    uint64_t n = 1;
    std::vector<uint64_t> divisors;
    int mobius = 1;
    uint64_t phi = 1;
    unsigned omega = 0;
    uint64_t q = 1;  // 2^omega, number of squarefree divisors
};

ArithProfile arith_profile(uint64_t n);

struct CycloValue {
    uint64_t n = 0;
    BigInt value;
    double abs_log = 0.0;
    int sign = 1;
};

/// Phi_n(alpha, beta) as the Moebius product of Lehmer numbers. n = 1, 2 are
/// only accepted when alpha and beta are integers.
CycloValue cyclo_value(const LehmerPair& pair, uint64_t n);

/// Same, reading u~_k from `terms` (terms.size() > n).
CycloValue cyclo_value(const LehmerPair& pair, uint64_t n, std::span<const BigInt> terms);

/// u~_n == prod_{d | n, d >= 3} Phi_d(alpha, beta).
bool cyclo_identity_check(const LehmerPair& pair, uint64_t n);

struct SizeBand {
    double actual = 0.0;     // log|Phi_n|
    double center = 0.0;     // phi(n) log|alpha|
    double halfwidth = 0.0;  // c q(n) log n log|alpha|
    bool within = false;
    double floor = 0.0;      // (phi(n)/2) log|alpha|
    bool above_floor = false;
};

/// n >= 3.
SizeBand size_band(const LehmerPair& pair, uint64_t n, double c = 1.0);

}  // namespace lforge
