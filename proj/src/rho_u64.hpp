#pragma once

#include <cstdint>
#include <optional>

namespace lforge::modarith {

/// Brent's cycle search on x -> x^2 + c mod n (n odd, composite) with the
/// product of differences gcd'ed every 128 steps. Returns a divisor in
/// (1, n), 0 when the walk closed without splitting n, or nullopt when the
/// iteration budget ran out. Decrements `iterations_left` by the number of
/// map evaluations.
std::optional<std::uint64_t> rho_u64(std::uint64_t n, std::uint64_t c, std::uint64_t x0,
                                     std::uint64_t& iterations_left);

}  // namespace lforge::modarith
