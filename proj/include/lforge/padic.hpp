#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lforge/bigint.hpp"
#include "lforge/pairs.hpp"

namespace lforge {

/// ord_p x; empty for x = 0 (infinite order).
struct PAdicOrder {
    std::optional<uint64_t> value;

    bool infinite() const { return !value.has_value(); }
    friend bool operator==(const PAdicOrder&, const PAdicOrder&) = default;
};

/// Throws Error(domain) when p is not prime.
PAdicOrder ord_int(const BigInt& p, const BigInt& x);
uint64_t ord_u64(uint64_t p, uint64_t x);  // x > 0

/// Kronecker symbol (d/p); the Legendre symbol for odd prime p.
int kronecker(const BigInt& d, uint64_t p);

struct RankRecord {
    uint64_t p = 0;
    uint64_t ell = 0;
    int symbol = 0;               // (d/p)
    bool divides_target = false;  // ell | p - (d/p), or ell | 2p when p | rs
};

/// Least ell >= 1 with p | u~_ell, found by scanning the recurrence mod p.
/// Errors: p even -> domain, p | Q -> unit, nothing within 2(p+1) -> search_exhausted.
RankRecord rank_of_apparition(const LehmerPair& pair, uint64_t p);
RankRecord rank_of_apparition(const LehmerPair& pair, const PairClass& cls, uint64_t p);

enum class OrdMethod { fast, fallback };

std::string_view to_string(OrdMethod m);

struct OrdResult {
    PAdicOrder ord;
    OrdMethod method = OrdMethod::fast;
};

/// ord_p(u~_n). Fast path (p odd, p not dividing rs): ord_p(u~_ell) + ord_p(n/ell)
/// when ell | n, else 0. Otherwise the exact Lehmer number is inspected.
OrdResult ord_u(const LehmerPair& pair, uint64_t p, uint64_t n);
OrdResult ord_u_exact(const LehmerPair& pair, uint64_t p, uint64_t n);

/// ord_p(a^n - b^n) for p not dividing ab. Odd p uses lifting the exponent
/// through the order ell of a/b mod p: ord_p(a^ell - b^ell) + ord_p(n/ell).
OrdResult ord_power_difference(int64_t a, int64_t b, uint64_t p, uint64_t n);

/// ord_p(a^n - b^n) computed modulo p^k with k escalating; caps k at 64.
uint64_t ord_power_difference_escalating(int64_t a, int64_t b, uint64_t p, uint64_t n);

/// Order of alpha/beta in the residue field at p, for p not dividing 2Q and
/// unramified (p not dividing d when d != 1). Works in
/// F_p when (d/p) = 1 or d = 1, F_{p^2} when (d/p) = -1.
uint64_t residue_order(const LehmerPair& pair, uint64_t p);
uint64_t residue_order(const LehmerPair& pair, const PairClass& cls, uint64_t p);

struct Thm2Point {
    uint64_t ord = 0;
    double bound = 0.0;
    bool ok = false;
};

/// ord_p(a^{p-1} - b^{p-1}) against p exp(-log p / 52 log log p) log a.
Thm2Point verify_thm2_point(int64_t a, int64_t b, uint64_t p);

}  // namespace lforge
