#pragma once

// Seeded random streams. A stream is keyed by (seed, index) so that draw i
// is the same no matter which worker produces it.

#include <cstdint>
#include <random>

#include "g2ml/arith.hpp"

namespace g2ml {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// p/q with |p| <= num_max and 1 <= q <= den_max.
struct RationalRange {
  std::int64_t num_max = 20;
  std::int64_t den_max = 10;
};

inline Rational random_rational(Rng& rng, const RationalRange& range) {
  std::uniform_int_distribution<std::int64_t> num(-range.num_max, range.num_max);
  std::uniform_int_distribution<std::int64_t> den(1, range.den_max);
  const auto p = num(rng);
  const auto q = den(rng);
  return make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

}  // namespace g2ml
