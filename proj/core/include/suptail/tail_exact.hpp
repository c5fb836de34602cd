#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "suptail/space.hpp"

namespace suptail {

enum class TailMethod { ExactDp, InclusionExclusion, ClosedForm, MonteCarlo };

struct BoundComparison {
  std::string name;
  double value = 0.0;     // round-up float of the bound (display; may underflow to 0)
  bool satisfied = true;  // exact verdict, never taken from the float
  bool in_regime = true;
  double margin_log10 = 0.0;  // log10(bound) - log10(lhs); +inf when lhs == 0
};

struct TailResult {
  TailMethod method = TailMethod::ExactDp;
  Rat probability;  // exact for non-MC methods
  std::vector<BoundComparison> bounds;
};

/// Default cap on the composition count of the occupancy DP; override with
/// the SUPTAIL_DP_STATE_CAP environment variable.
std::uint64_t dp_state_cap();

/// Exact P(sup_f S_n(f) >= u) (or > u when strict) for i.i.d. draws from the
/// space, by occupancy DP over the atoms of the class's value-signature
/// algebra. Every row is constant on every atom, so per composition the
/// supremum is a linear functional of the atom counts and the result is
/// exact, not a bound.
TailResult exact_sup_tail(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                          const Rat& threshold, bool strict,
                          std::uint64_t state_cap = dp_state_cap());

/// Supplies exact intersection measures mu(∩_{i in mask} A_i) for a family of
/// indicator sets that may live on an astronomically large space.
class IndicatorFamily {
 public:
  virtual ~IndicatorFamily() = default;
  virtual int size() const = 0;
  virtual std::string describe() const = 0;
  /// member_mask is nonempty; bit i selects set i.
  virtual Rat intersection_measure(std::uint32_t member_mask) const = 0;
};

/// Pairwise disjoint sets with the given measures.
std::unique_ptr<IndicatorFamily> disjoint_family(std::vector<Rat> measures);
/// A chain A_0 ⊆ A_1 ⊆ ...; measures must be nondecreasing.
std::unique_ptr<IndicatorFamily> nested_family(std::vector<Rat> measures);
/// A_i = core ∪ petal_i with disjoint petals: intersections of two or more
/// members collapse to the core.
std::unique_ptr<IndicatorFamily> sunflower_family(Rat core_measure, std::vector<Rat> petal_measures);
/// Explicit family backed by a 0/1 table on a finite space.
std::unique_ptr<IndicatorFamily> table_family(const FunctionTable& table, const FiniteSpace& space);

/// mu_p of the union of product-hit sets B_p(f) over the family, by
/// inclusion-exclusion with zero-measure pruning: exact for any power p.
TailResult bp_measure(const IndicatorFamily& family, long power);

/// Explicit-table convenience overload; rows must be 0/1-valued.
TailResult bp_measure(const FunctionTable& indicator_rows, const FiniteSpace& space, long power);

}  // namespace suptail
