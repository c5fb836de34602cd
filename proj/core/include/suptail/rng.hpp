#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "suptail/rational.hpp"

namespace suptail {

/// SplitMix64 step; the usual finalizer-based stream.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return x;
}

/// A small counter-keyed stream: sample index -> independent substream.
/// Results depend only on (seed, index), never on scheduling, which is what
/// makes worker-count invariance hold by construction.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t next() { return splitmix64_next(state_); }

  /// Unbiased uniform draw in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Draws point indices exactly according to a rational weight vector by
/// working over the integer grid of the weights' common denominator.
class PointSampler {
 public:
  explicit PointSampler(const std::vector<Rat>& weights);

  int draw(SampleStream& stream) const;

  std::uint64_t grid() const { return grid_; }

 private:
  std::uint64_t grid_ = 0;                 // common denominator
  std::vector<std::uint64_t> cumulative_;  // integer weight prefix sums
};

}  // namespace suptail
