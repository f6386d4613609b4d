#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "lforge/bigint.hpp"

namespace lforge {

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

enum class FactorStatus { complete, partial };

struct Factorization {
    BigInt input;
    std::vector<PrimePower> factors;  // ascending by prime
    BigInt residual = 1;              // unfactored composite part, 1 if complete
    FactorStatus status = FactorStatus::complete;

    bool complete() const { return status == FactorStatus::complete; }
    /// sign(input) * prod p^e * residual == input
    bool reassembles() const;
};

/// Consulted before, and fed after, any factoring work. Keys are |x|.
class FactorMemo {
public:
    virtual ~FactorMemo() = default;
    virtual std::optional<Factorization> lookup(const BigInt& abs_value) const = 0;
    virtual void store(const Factorization& f) = 0;
};

inline constexpr uint64_t kDefaultRhoIterations = 10'000'000;
inline constexpr uint32_t kDefaultTrialBound = 100'000;

struct FactorBudget {
    uint64_t rho_iterations = kDefaultRhoIterations;  // per composite cofactor
    uint64_t seed = 0;
    uint32_t trial_bound = kDefaultTrialBound;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    FactorMemo* memo = nullptr;
};

inline constexpr unsigned kDefaultPrimalityRounds = 40;

bool is_prime(const BigInt& x, unsigned rounds = kDefaultPrimalityRounds);

/// Trial division then Brent-Pollard rho. Never throws on budget exhaustion;
/// the unfactored part is returned as `residual` with status partial.
/// x == 0 raises Error(domain).
Factorization factorize(const BigInt& x, const FactorBudget& budget = {});

struct GpfResult {
    BigInt value = 1;
    bool exact = true;
};

/// P(x) with P(0) = P(1) = P(-1) = 1.
GpfResult greatest_prime_factor(const BigInt& x, const FactorBudget& budget = {});
GpfResult greatest_prime_factor(const Factorization& f);

/// Factors a^n - b^n piece by piece through Phi_d(a, b), d | n.
/// Requires a > b >= 1, gcd(a, b) = 1.
Factorization factor_power_difference(int64_t a, int64_t b, uint64_t n, const FactorBudget& budget = {});

/// Merges two prime-power lists and multiplies residuals.
Factorization merge_factorizations(const BigInt& input, const std::vector<Factorization>& parts);

}  // namespace lforge
