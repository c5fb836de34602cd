#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "suptail/rng.hpp"
#include "suptail/rounding.hpp"
#include "suptail/space.hpp"

namespace suptail {

struct HalvingLevel {
  int level = 0;     // k
  BigInt points;     // 2^k * base_points; in-window counts blow past 64 bits fast
  Ival mean_cap;     // the level's shrinking mean cap (irrational: kept as an enclosure)
  Rat correction;    // exact running product of (1 + 2^-j * base cap)
  IvalOrder at_least_half_base = IvalOrder::Unknown;  // mean cap >= base/2 report
};

struct HalvingSchedule {
  Rat base_mean_cap;
  BigInt base_points;
  bool window_low_ok = false;   // base_points > (1/16) * cap^(-3/2), exact
  bool window_high_ok = false;  // base_points <= (1/8) * cap^(-3/2), exact
  std::vector<HalvingLevel> levels;
};

/// Doubling schedule: points double per level, the mean cap divides by
/// (1 + 3 * points^(-1/8)); the correction product stays exact. The window
/// and the cap-halving property are reported, never enforced.
HalvingSchedule build_schedule(const Rat& mean_cap, const BigInt& base_points, int max_level);

/// A perfect matching on 2N point indices plus one sign per pair; the sign
/// picks which element of the pair goes into the selected half.
struct PairingState {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> signs;  // +1 selects .first, -1 selects .second

  int pair_count() const { return static_cast<int>(pairs.size()); }
  int point_count() const { return 2 * pair_count(); }
  std::vector<int> selected_half() const;
  void validate() const;  // perfect disjoint matching, signs in {-1, +1}
};

PairingState identity_pairing(int pair_count);
PairingState random_pairing(int pair_count, SampleStream& stream);

/// Exact signed pair-difference sum: sum_l sign_l * (f(first_l) - f(second_l)).
Rat randomized_sum(const std::vector<Rat>& values, const PairingState& pairing);

struct HoeffdingBounds {
  double from_diffs = 1.0;      // exp(-2 z^2 / sum d^2), round-up
  double from_mean_cap = 1.0;   // exp(-z^2 / (2 N cap)), round-up
  bool degenerate = false;      // all pair differences zero: tail is 0, bound reported as 1
  bool mean_cap_valid = false;  // exact check of sum d^2 <= 4 N cap
};

HoeffdingBounds hoeffding_bounds(const std::vector<Rat>& pair_diffs, std::int64_t points,
                                 const Rat& next_mean_cap, const Rat& z);
double hoeffding_diff_bound(const std::vector<Rat>& pair_diffs, const Rat& z);
double hoeffding_count_bound(std::int64_t points, const Rat& next_mean_cap, const Rat& z);

/// Exact P(randomized sum > 2z) over all sign vectors (pair count <= 20).
Rat exact_signed_tail(const std::vector<Rat>& values, const PairingState& pairing, const Rat& z);

/// Exact count of half-size subsets Y (|Y| = point_count/2) whose best row
/// sum reaches the threshold: #{Y : sup_f sum_{x in Y} f(x) >= threshold}.
/// Needs an even point count <= 26.
BigInt count_bad_halves(const FunctionTable& table, const Rat& threshold);

/// Same count restricted to transversals of a pairing (one point per pair).
BigInt count_bad_transversals(const std::vector<Rat>& values, const PairingState& pairing,
                              const Rat& threshold);

struct CountingFactor {
  Rat binomial_form;  // N^p * C(2N, N) / C(2N-p, N-p)
  Rat product_form;   // (2N)^p * prod_{i=1}^{p-1} (1 + i / (2(N-i)))
};

/// Both closed forms of the overcount factor; they agree exactly (checked).
CountingFactor counting_factor(std::int64_t points, long power);

struct ChainRow {
  std::string step;
  bool boolean_only = false;  // window / cap-halving rows carry no log values
  double lhs_log = 0.0;       // conservative (upper) end of the LHS log
  double rhs_log = 0.0;       // conservative (lower) end of the RHS log
  IvalOrder holds = IvalOrder::Unknown;
  double log_margin = 0.0;    // rhs_log - lhs_log (natural log scale)
};

/// The induction chain evaluated in log space with directed rounding: the
/// halved-set count bound, its absorption into the correction product, the
/// overcount-factor estimates, and the assembled induction step. A report,
/// not an assertion; the explicit constants are fragile near the regime
/// boundary and failing rows are findings.
std::vector<ChainRow> chain_report(const Rat& mean_cap, const BigInt& base_points, int level,
                                   long power, const Rat& density_param,
                                   const Rat& density_exponent);

}  // namespace suptail
