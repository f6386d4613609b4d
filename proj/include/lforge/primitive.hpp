#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lforge/bigint.hpp"
#include "lforge/factorization.hpp"
#include "lforge/pairs.hpp"

namespace lforge {

/// P(n / (3, n)), the one prime allowed to divide Phi_n without being
/// congruent to +-1 mod n. 1 when there is none.
uint64_t special_prime(uint64_t n);

enum class PrimeLabel { special, plus_one, minus_one, violation };

std::string_view to_string(PrimeLabel label);

struct PrimeClass {
    BigInt prime;
    unsigned exponent = 0;
    PrimeLabel label = PrimeLabel::violation;
};

struct PrimeClassification {
    uint64_t n = 0;
    std::vector<PrimeClass> primes;
    BigInt residual = 1;
    FactorStatus status = FactorStatus::complete;

    bool has_violation() const;
};

/// Labels every prime factor of |Phi_n|. Requires a coprime pair, n > 4 and
/// n not in {6, 12}; otherwise Error(invalid_pair) / Error(domain).
PrimeClassification classify_prime_factors(const LehmerPair& pair, uint64_t n, const FactorBudget& budget = {});

enum class PrimDivMethod { definitional, fast };

std::string_view to_string(PrimDivMethod m);

struct PrimDivReport {
    uint64_t n = 0;
    std::vector<BigInt> primitive_primes;
    bool has_primitive = false;
    PrimDivMethod method = PrimDivMethod::definitional;
    FactorStatus factor_status = FactorStatus::complete;
};

/// q | u~_n, q does not divide rs, and the rank of apparition of q is exactly n.
bool is_primitive_prime(const LehmerPair& pair, const BigInt& rs, const BigInt& q, uint64_t n);

/// Primitive prime divisors of u~_n among the prime factors of Phi_n.
PrimDivReport primitive_divisors(const LehmerPair& pair, uint64_t n, const FactorBudget& budget = {});

/// Factorization-free for n > 4, n not in {6, 12}: |Phi_n| with one factor of
/// the special prime and everything shared with rs removed is > 1.
bool has_primitive_divisor(const LehmerPair& pair, uint64_t n);
PrimDivReport primitive_report_fast(const LehmerPair& pair, uint64_t n);

enum class Law { carmichael, bhv, zsigmondy };

std::string_view to_string(Law law);
Law parse_law(std::string_view name);

enum class Verdict { pass, fail, incomplete };

std::string_view to_string(Verdict v);

struct RangeRow {
    uint64_t n = 0;
    bool applies = false;  // n beyond the law's threshold
    Verdict verdict = Verdict::pass;
    BigInt threshold;      // n-1, n+1, or 0 for bhv
    BigInt witness;        // lower bound for P(.) that settled the verdict
    bool has_primitive = false;
    std::string_view method;  // "primitive" or "factor"
};

/// Per-n verdicts for one law. Law/pair mismatch raises Error(domain).
std::vector<RangeRow> check_range(const LehmerPair& pair, uint64_t n_from, uint64_t n_to, Law law,
                                  const FactorBudget& budget = {}, unsigned threads = 1);

}  // namespace lforge
