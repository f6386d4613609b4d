#pragma once

// Word-size modular arithmetic and small-integer number theory shared by the
// sequence, p-adic and factorization kernels.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lforge::modarith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// Reduces a signed value into [0, m).
inline u64 reduce_signed(std::int64_t a, u64 m) {
    if (a >= 0) return static_cast<u64>(a) % m;
    u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids overflow at INT64_MIN
    return m - 1 - r;
}

/// Deterministic for every 64-bit input (first twelve primes as witnesses).
bool is_prime_u64(u64 n);

/// Square root of a modulo an odd prime p; a must be a quadratic residue.
u64 sqrt_mod(u64 a, u64 p);

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre_u64(u64 a, u64 p);

/// Sieve of Eratosthenes; the table up to 10^5 is built once and shared.
std::vector<std::uint32_t> primes_upto(std::uint32_t limit);
std::span<const std::uint32_t> small_primes();  // primes <= 100000

/// Factorization of a word-size integer by trial division and, past the
/// small-prime table, Pollard rho. Returns (prime, exponent) ascending.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

std::vector<u64> divisors(u64 n);
int mobius(u64 n);
u64 euler_phi(u64 n);
unsigned omega(u64 n);

/// Greatest prime factor of n with P(0) = P(1) = 1.
u64 greatest_prime_factor_u64(u64 n);

/// Multiplicative order of g in a group of order group_order (g^group_order = 1
/// must hold); `pow` evaluates g^e in the group.
template <typename PowFn>
u64 order_dividing(u64 group_order, PowFn&& pow_is_one) {
    u64 order = group_order;
    for (auto [q, e] : factor_u64(group_order)) {
        for (unsigned i = 0; i < e; ++i) {
            if (order % q == 0 && pow_is_one(order / q)) {
                order /= q;
            } else {
                break;
            }
        }
    }
    return order;
}

/// Montgomery form for odd moduli; used by the rho inner loop.
class Montgomery {
public:
    explicit Montgomery(u64 modulus);

    u64 modulus() const { return n_; }
    u64 to(u64 a) const { return reduce(static_cast<u128>(a % n_) * r2_); }
    u64 from(u64 a) const { return reduce(a); }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 add(u64 a, u64 b) const { return addmod(a, b, n_); }
    u64 sub(u64 a, u64 b) const { return submod(a, b, n_); }

private:
    u64 reduce(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv_;
        u128 mn = static_cast<u128>(m) * n_;
        u64 hi_t = static_cast<u64>(t >> 64);
        u64 hi_mn = static_cast<u64>(mn >> 64);
        // low halves cancel by construction; carry iff low(t) != 0
        u64 carry = static_cast<u64>(t) != 0 ? 1 : 0;
        u128 res = static_cast<u128>(hi_t) + hi_mn + carry;
        if (res >= n_) res -= n_;
        return static_cast<u64>(res);
    }

    u64 n_;
    u64 ninv_;  // -n^{-1} mod 2^64
    u64 r2_;    // 2^128 mod n
};

}  // namespace lforge::modarith
