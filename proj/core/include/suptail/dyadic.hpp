#pragma once

#include <cstdint>
#include <vector>

#include "suptail/tail_exact.hpp"

namespace suptail {

/// The level decomposition of a [0,1]-valued class: per level j the capped
/// table min(2^-j, f) and its rescaling by 2^j, which is 1 exactly where
/// f >= 2^-j. Level count R satisfies n < 2^R <= 2n.
struct DyadicDecomposition {
  long sample_size = 0;  // n
  int level_count = 0;   // R
  FunctionTable base;
  std::vector<FunctionTable> capped;  // capped[j-1] = min(2^-j, f)
  std::vector<FunctionTable> scaled;  // scaled[j-1] = 2^j * capped[j-1], values in [0,1]
};

DyadicDecomposition dyadic_truncate(const FunctionTable& table, long sample_size);

/// Per-level hit counts for one row along a sample: H_j = #{draws with
/// f(x) >= 2^-j}, j = 1..R.
std::vector<long> level_counts(const DyadicDecomposition& decomposition, int row,
                               const std::vector<int>& sample_points);

struct DominationReport {
  long trials = 0;
  long violations = 0;
  Rat min_slack;  // min over trials of bound - partial sum (>= 0 when no violations)
  Rat max_slack;
};

/// Random (row, sample) draws checking the exact pointwise domination
/// S_n(f) <= sum_j 2^(1-j) H_j + 1. Violations are findings (there are none).
DominationReport domination_check(const FunctionTable& table, const FiniteSpace& space,
                                  long sample_size, long trials, std::uint64_t seed);

/// Integer hit threshold for level j at overall threshold u:
/// floor((sqrt(2)-1)/2 * (u-1) * 2^(j/2)) + 1, with the floor certified
/// (interval first, exact quadratic comparison if the interval straddles).
long hit_threshold(const Rat& threshold, int level);

struct LevelTail {
  int level = 0;          // j
  long hits_needed = 0;   // t(j)
  Rat measure;            // exact measure of the level event
  std::vector<BoundComparison> bounds;
};

/// Exact measure of the level-j event {some f collects t(j) draws at or
/// above 2^-j}, by the occupancy DP on the level indicator family, plus the
/// per-level closed-form bound pieces for the report.
LevelTail level_event_measure(const FunctionTable& table, const FiniteSpace& space,
                              long sample_size, const Rat& threshold, int level,
                              const Rat& density_param, long density_exponent);

struct SubadditivityReport {
  Rat whole_tail;                // exact P(sup S_n > u)
  Rat level_sum;                 // exact sum of level event measures
  std::vector<LevelTail> levels;
  bool holds = false;            // whole_tail <= level_sum, exact
};

SubadditivityReport subadditivity_check(const FunctionTable& table, const FiniteSpace& space,
                                        long sample_size, const Rat& threshold,
                                        const Rat& density_param, long density_exponent);

}  // namespace suptail
