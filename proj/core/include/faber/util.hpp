#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace faber {

/// Sum in a fixed pairwise tree order; identical for identical input.
double pairwise_sum(std::span<const double> values);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based stream: hash of (seed, a, b) without sequential state.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Uniform double in [0,1) from the top 53 bits.
double to_unit(std::uint64_t bits) noexcept;

}  // namespace faber
