#pragma once

#include <cstdint>
#include <vector>

#include "suptail/rational.hpp"

namespace suptail {

/// A set system over a small ground set, each set a bitmask over the points.
/// Exhaustive trace operations cap the ground set at 18 points.
struct SetSystem {
  int ground_size = 0;
  std::vector<std::uint32_t> sets;
};

/// All subsets with 0..max_size points (the "at most L points" system,
/// including the empty set).
SetSystem subsets_system(int ground_size, int max_size);

/// Max over n-point subsets S of the number of distinct traces S ∩ D.
BigInt shatter_coefficient(const SetSystem& system, int n);

/// Largest n whose shatter coefficient is 2^n (0 if no n >= 1 qualifies).
int vc_dimension(const SetSystem& system);

struct VcPerN {
  int n = 0;
  BigInt trace_count;
  double bound = 0.0;  // parameter * n^exponent
  bool holds = false;  // exact comparison of the integer count against the bound
};

struct VcParams {
  double parameter = 0.0;
  int exponent = 0;
  std::vector<VcPerN> per_n;
};

/// Per-n report of trace count vs parameter * n^exponent. A report, not an
/// assertion: the definition quantifies over all n and small-n failures of
/// proposed constants are findings, not errors.
VcParams check_vc_bound(const SetSystem& system, double parameter, int exponent,
                        int n_min, int n_max);

}  // namespace suptail
