#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "suptail/space.hpp"

namespace suptail {

struct McConfig {
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int worker_count = 1;  // never affects results, only wall time
};

struct McEstimate {
  std::uint64_t hit_count = 0;
  std::uint64_t sample_count = 0;
  double estimate = 0.0;
  double ci_low = 0.0;   // two-sided 99% Clopper-Pearson
  double ci_high = 0.0;
};

/// Two-sided 99% Clopper-Pearson interval for a binomial proportion.
std::pair<double, double> clopper_pearson_99(std::uint64_t hits, std::uint64_t samples);

/// Seeded estimate of P(sup_f S_n(f) >= u) (or > u when strict). Each sample
/// index keys its own counter-based stream, draws are exact against the
/// rational weights, and the per-sample hit decision is an exact integer
/// comparison; hit counts are a pure function of (seed, sample_count).
///
/// Deep-tail regimes (mean caps like n^-200) are not reachable by plain
/// sampling; those questions belong to the inclusion-exclusion route.
McEstimate mc_sup_tail(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                       const Rat& threshold, bool strict, const McConfig& config);

struct McCrossCheck {
  McEstimate mc;
  bool exact_available = false;
  Rat exact;
  bool exact_inside_ci = false;
  std::string note;
};

/// Runs both routes; flags when the exact value escapes the 99% interval
/// (expected for at most ~1% of seeds). An infeasible exact side is reported,
/// not fatal.
McCrossCheck mc_vs_exact(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                         const Rat& threshold, bool strict, const McConfig& config);

}  // namespace suptail
