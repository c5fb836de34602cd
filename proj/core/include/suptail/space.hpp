#pragma once

#include <cstdint>
#include <vector>

#include "suptail/rational.hpp"

namespace suptail {

/// A finite point set carrying a probability weight vector. Weights are exact
/// rationals and must sum to exactly 1. Product powers of the space are never
/// materialized; every operation that needs them works on compositions or
/// sequences of point indices.
class FiniteSpace {
 public:
  /// Validates: at least one point, all weights >= 0, exact sum 1.
  explicit FiniteSpace(std::vector<Rat> weights);

  static FiniteSpace uniform(int point_count);

  int point_count() const { return static_cast<int>(weights_.size()); }
  const Rat& weight(int point) const { return weights_[static_cast<std::size_t>(point)]; }
  const std::vector<Rat>& weights() const { return weights_; }

 private:
  std::vector<Rat> weights_;
};

/// A function class as an explicit table: one row per function, one column
/// per point of the space, every entry an exact rational in [0, 1].
class FunctionTable {
 public:
  /// Validates: >= 1 row, rectangular, entries within [0, 1].
  explicit FunctionTable(std::vector<std::vector<Rat>> rows);

  int row_count() const { return rows_; }
  int col_count() const { return cols_; }

  const Rat& at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * cols_ + col];
  }
  /// One function as a contiguous value vector.
  std::vector<Rat> row(int row) const;

  /// New table keeping only the given columns (function restriction to a
  /// subset of points), in the given order.
  FunctionTable restrict_columns(const std::vector<int>& columns) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> values_;
};

/// Disjoint point-index sets covering the whole space, with their measures.
struct PartitionAlgebra {
  std::vector<std::vector<int>> atoms;
  std::vector<Rat> atom_measures;

  int atom_count() const { return static_cast<int>(atoms.size()); }
};

FiniteSpace make_uniform_space(int point_count);

/// Largest row mean: max over functions f of the exact integral of f d(mu).
/// This is the achieved sup of means the tail bounds call rho.
Rat sup_mean(const FunctionTable& table, const FiniteSpace& space);

enum class SubsetClassMode { Explicit, Implicit };

/// Closed-form data for the class of indicators of all subsets of size
/// 1..max_size of a point set, used when the explicit table would be huge.
struct SubsetClassInfo {
  int point_count = 0;
  int max_size = 0;
  BigInt row_count;  // sum of C(point_count, i) for i in 1..max_size
};

SubsetClassInfo subset_class_info(int point_count, int max_size);

/// Explicit indicator table of all subsets with 1..max_size points, ordered
/// by size then lexicographically. Enumeration above row_cap is refused.
FunctionTable subset_indicator_class(int point_count, int max_size,
                                     std::uint64_t row_cap = 200000);

/// Atoms of the algebra generated by the level sets {x : f(x) >= threshold}
/// over all rows f: maximal point sets with identical membership signature.
PartitionAlgebra atoms_of_level_sets(const FunctionTable& table, const FiniteSpace& space,
                                     const Rat& threshold);

/// Atoms of the full value-signature algebra: maximal point sets on which
/// every row is constant. The exact tail DP runs on these, which is what
/// makes it exact rather than a bound.
PartitionAlgebra signature_atoms(const FunctionTable& table, const FiniteSpace& space);

}  // namespace suptail
