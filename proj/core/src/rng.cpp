#include "suptail/rng.hpp"

#include <algorithm>

namespace suptail {

PointSampler::PointSampler(const std::vector<Rat>& weights) {
  BigInt common_den = 1;
  for (const Rat& w : weights) {
    common_den = boost::multiprecision::lcm(common_den, denominator(w));
  }
  if (common_den > BigInt(UINT64_MAX)) {
    throw std::invalid_argument(
        "weight denominators too large for exact integer sampling (common denominator " +
        common_den.str() + ")");
  }
  grid_ = static_cast<std::uint64_t>(common_den);
  cumulative_.reserve(weights.size());
  BigInt cum = 0;
  for (const Rat& w : weights) {
    cum += numerator(w) * (common_den / denominator(w));
    cumulative_.push_back(static_cast<std::uint64_t>(cum));
  }
}

int PointSampler::draw(SampleStream& stream) const {
  const std::uint64_t r = stream.next_below(grid_);
  // first index whose cumulative weight exceeds r
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return static_cast<int>(it - cumulative_.begin());
}

}  // namespace suptail
