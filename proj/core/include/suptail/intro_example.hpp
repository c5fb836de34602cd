#pragma once

#include <optional>

#include "suptail/tail_exact.hpp"

namespace suptail {

/// Exact P(at most max_size distinct values among sample_size uniform draws
/// from point_count points), via the Stirling-number closed form, together
/// with the two closed-form bounds it is compared against:
///   "union":     C(N, L) * (L/N)^n
///   "factorial": 4^L * (L/N)^(n-L)
/// Both bounds are rationals, so the satisfied flags are exact.
TailResult intro_example_Pn(int point_count, int max_size, long sample_size);

struct PunBounds {
  Rat select_bound;  // C(n, u) * P_u
  Rat closed_bound;  // 4^L * n^u * (L/N)^(u-L)
  std::optional<Rat> exact_tail;  // cross-check on the explicit class when feasible
};

/// The threshold-u variant: both bound routes, plus the exact tail of the
/// explicit subset-indicator class when the instance is small enough to
/// enumerate (left empty otherwise).
PunBounds intro_example_Pun_bound(int point_count, int max_size, long sample_size, long threshold);

}  // namespace suptail
