#ifndef SUBDEBT_RANDOM_HPP
#define SUBDEBT_RANDOM_HPP

#include <cstdint>

#include "subdebt/normal.hpp"

namespace subdebt {

/// Counter-based SplitMix64: the value for `index` is the (index+1)-th output
/// of a SplitMix64 stream started at `seed`, computed without walking the
/// stream. Any partition of the index range produces the same numbers.
inline constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform on the open interval (0, 1): top 53 bits, offset by half a step.
inline constexpr double uniform_open_at(std::uint64_t seed, std::uint64_t index) {
  constexpr double step = 0x1.0p-53;
  return (static_cast<double>(splitmix64_at(seed, index) >> 11) + 0.5) * step;
}

/// Standard normal variate by inverse-CDF transform of `uniform_open_at`.
inline double normal_at(std::uint64_t seed, std::uint64_t index) {
  return normal_quantile(uniform_open_at(seed, index));
}

}  // namespace subdebt

#endif
