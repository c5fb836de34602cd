#include "suptail/vc.hpp"

#include <stdexcept>
#include <unordered_set>

namespace suptail {

namespace {

constexpr int kGroundCap = 18;

void check_ground(const SetSystem& system, int n) {
  if (system.ground_size < 1 || system.ground_size > kGroundCap) {
    throw std::invalid_argument("set system ground size must lie in [1, " +
                                std::to_string(kGroundCap) + "]");
  }
  if (n < 0 || n > system.ground_size) {
    throw std::invalid_argument("n must lie in [0, ground size]");
  }
}

template <typename Visit>
void for_each_subset_mask(int ground, int size, Visit&& visit) {
  // lexicographic combinations as bitmasks
  std::vector<int> pick(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint32_t mask = 0;
    for (int p : pick) mask |= 1u << p;
    visit(mask);
    int i = size - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == ground - size + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

SetSystem subsets_system(int ground_size, int max_size) {
  if (ground_size < 1 || max_size < 0 || max_size > ground_size) {
    throw std::invalid_argument("subsets_system: need 0 <= max_size <= ground_size");
  }
  SetSystem system;
  system.ground_size = ground_size;
  system.sets.push_back(0);  // the empty set
  for (int size = 1; size <= max_size; ++size) {
    for_each_subset_mask(ground_size, size,
                         [&](std::uint32_t mask) { system.sets.push_back(mask); });
  }
  return system;
}

BigInt shatter_coefficient(const SetSystem& system, int n) {
  check_ground(system, n);
  if (n == 0) return 1;
  std::size_t best = 0;
  std::unordered_set<std::uint32_t> traces;
  for_each_subset_mask(system.ground_size, n, [&](std::uint32_t sample_mask) {
    traces.clear();
    for (std::uint32_t d : system.sets) traces.insert(d & sample_mask);
    best = std::max(best, traces.size());
  });
  return BigInt(best);
}

int vc_dimension(const SetSystem& system) {
  check_ground(system, 0);
  int dim = 0;
  for (int n = 1; n <= system.ground_size; ++n) {
    if (shatter_coefficient(system, n) == (BigInt(1) << n)) {
      dim = n;
    } else {
      break;  // shatter function is monotone in the shattering sense
    }
  }
  return dim;
}

VcParams check_vc_bound(const SetSystem& system, double parameter, int exponent,
                        int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("check_vc_bound: bad n range");
  check_ground(system, std::min(n_max, system.ground_size));
  VcParams out;
  out.parameter = parameter;
  out.exponent = exponent;
  const Rat param_exact = rational_from_double(parameter);
  for (int n = n_min; n <= std::min(n_max, system.ground_size); ++n) {
    VcPerN row;
    row.n = n;
    row.trace_count = shatter_coefficient(system, n);
    const Rat bound_exact = param_exact * pow_rational(Rat(n), exponent);
    row.bound = to_double(bound_exact);
    row.holds = Rat(row.trace_count) <= bound_exact;
    out.per_n.push_back(std::move(row));
  }
  return out;
}

}  // namespace suptail
