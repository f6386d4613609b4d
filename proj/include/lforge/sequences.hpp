#pragma once

#include <cstdint>
#include <vector>

#include "lforge/bigint.hpp"
#include "lforge/pairs.hpp"

namespace lforge {

enum class SequenceKind { lucas, lehmer };

/// Exact Lehmer number u~_n.
BigInt lehmer_u(const LehmerPair& pair, uint64_t n);

/// u~_0 .. u~_{n_max}, one pass of the recurrence.
std::vector<BigInt> lehmer_terms(const LehmerPair& pair, uint64_t n_max);

/// Lucas number u_n with P = +sqrt(R). Throws Error(kind) for non-Lucas pairs.
BigInt lucas_u(const LehmerPair& pair, uint64_t n);

/// u~_n mod m. Throws Error(modulus) for m < 2.
uint64_t lehmer_u_mod(const LehmerPair& pair, uint64_t n, uint64_t m);
BigInt lehmer_u_mod(const LehmerPair& pair, uint64_t n, const BigInt& m);

/// Iterates u~_n mod p one index at a time, starting from n = 0.
class LehmerModWalker {
public:
    LehmerModWalker(const LehmerPair& pair, uint64_t modulus);

    uint64_t index() const { return n_; }
    uint64_t value() const { return window_[0]; }
    void advance();

private:
    uint64_t m_;
    uint64_t a_;   // R - 2Q mod m
    uint64_t q2_;  // Q^2 mod m
    uint64_t n_ = 0;
    uint64_t window_[4];  // u~_n .. u~_{n+3}
};

}  // namespace lforge
