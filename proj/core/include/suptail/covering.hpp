#pragma once

#include <string>
#include <vector>

#include "suptail/space.hpp"

namespace suptail {

/// Exact L1 distance between two value vectors under a weight measure.
Rat l1_distance(const std::vector<Rat>& a, const std::vector<Rat>& b,
                const FiniteSpace& measure);

/// A verified epsilon-net taken from the class itself: every row is at L1
/// distance strictly below epsilon from some center row.
struct CoverCertificate {
  Rat epsilon;
  std::vector<int> center_rows;
  Rat worst_gap;  // max over rows of min distance to a center; < epsilon

  int size() const { return static_cast<int>(center_rows.size()); }
};

/// Farthest-point greedy net. Deterministic: ties pick the lowest row index.
CoverCertificate greedy_cover(const FunctionTable& table, const FiniteSpace& measure,
                              const Rat& epsilon);

/// Minimal cover size by exhaustive subset search, increasing cardinality.
/// Refuses classes larger than row_cap rows.
int exact_min_cover(const FunctionTable& table, const FiniteSpace& measure,
                    const Rat& epsilon, int row_cap = 12);

struct DenseEvidence {
  Rat epsilon;
  std::string measure_id;
  long greedy_size = 0;  // always available
  long exact_size = -1;  // exhaustive minimum, -1 when the class is above the cap

  long best_size() const { return exact_size >= 0 ? exact_size : greedy_size; }
};

/// A fitted (parameter, exponent) pair with the sampled-measure evidence
/// behind it. This is a lower-bound certificate on the worst case over all
/// probability measures: only finitely many measures were tried.
struct DenseParams {
  double parameter = 1.0;  // >= 1, round-up so evidence entries satisfy m <= D * eps^-L
  double exponent = 1.0;   // >= 1
  std::vector<DenseEvidence> evidence;
};

struct FitOptions {
  int dirichlet_draws = 64;
  int hill_climb_steps = 20;
  std::uint64_t seed = 1;
  int exact_cover_row_cap = 12;
};

/// Fit (D, L): sweep a measure family (class-algebra atoms, random rational
/// simplex draws, coordinate hill-climbing from the worst draw) against the
/// epsilon grid, then pick the exponent candidate minimizing the implied D.
DenseParams fit_dense_params(const FunctionTable& table, const std::vector<Rat>& epsilon_grid,
                             const std::vector<double>& exponent_candidates,
                             const FitOptions& options = {});

/// The classical VC-to-dense conversion leaves its small-n constant
/// unspecified; fit reports surface that as a caveat string.
extern const char* const kDenseFitCaveat;

}  // namespace suptail
