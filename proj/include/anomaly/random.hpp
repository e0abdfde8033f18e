#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anomaly/rational.hpp"

namespace anomaly {

/// SplitMix64. State advances by 0x9E3779B97F4A7C15; output mix uses the multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts 30, 27, 31.
///
/// split() seeds a child stream from the next output, so a sharded run can hand out
/// independent deterministic streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64(next()); }

  // Uniform-ish integer in [0, bound) as next() % bound.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Uniform-ish integer in [lo, hi].
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::uint64_t state_;
};

inline const std::vector<long>& default_denominators() {
  static const std::vector<long> d{2, 3, 4, 5, 6, 8, 12};
  return d;
}

// k/d with d drawn from the list and 0 <= k < d.
inline Rational sample_coordinate(SplitMix64& rng, std::span<const long> denominators) {
  const long d = denominators[rng.below(denominators.size())];
  const long k = static_cast<long>(rng.below(static_cast<std::uint64_t>(d)));
  return make_rational(k, d);
}

inline QVector sample_coordinates(SplitMix64& rng, std::size_t n, std::span<const long> denominators) {
  QVector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(sample_coordinate(rng, denominators));
  return v;
}

}  // namespace anomaly
