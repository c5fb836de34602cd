#pragma once

#include <vector>

#include "suptail/space.hpp"

namespace suptail {

/// One common-refinement cell: the set of points whose function values fall
/// in the same value bin for every row. Bin s covers ((s-1)/n, s/n], except
/// bin 1 which closes at 0.
struct ValueCell {
  std::vector<int> points;
  Rat measure;
  std::vector<int> signature;  // bin index per row, 1-based
};

/// Cells ordered lexicographically by signature; zero-measure cells dropped.
struct CellPartition {
  long bin_count = 0;  // n
  std::vector<ValueCell> cells;

  int cell_count() const { return static_cast<int>(cells.size()); }
};

CellPartition cell_partition(const FunctionTable& table, const FiniteSpace& space,
                             long bin_count);

/// Replace each row by its conditional mean per cell: constant on cells,
/// within 1/n of the original everywhere that carries mass, and with every
/// row integral preserved exactly.
FunctionTable cell_average(const FunctionTable& table, const FiniteSpace& space,
                           const CellPartition& cells);

/// Per-row cell values of the averaged table: columns are cells, not points.
FunctionTable cell_value_table(const FunctionTable& table, const FiniteSpace& space,
                               const CellPartition& cells);

/// Per-row cell values of the bin-top surrogate: value signature(j)/n.
FunctionTable bin_top_table(const CellPartition& cells);

struct RoundedMeasure {
  int grid_exponent = 0;                 // k
  std::vector<Rat> masses;               // multiples of 2^-k, total exactly 1
  std::vector<BigInt> multipliers;       // alpha per cell
  std::vector<BigInt> cumulative_ceilings;  // beta_s = ceil(2^k * prefix mass)
};

/// Cumulative-ceiling rounding of a mass vector onto the 2^-k grid: running
/// sums round up to the next grid point, per-cell masses are consecutive
/// differences. Total stays exactly 1 and no cell moves by more than 2^-k.
RoundedMeasure round_measure(const std::vector<Rat>& masses, int grid_exponent);

struct HatConstruction {
  FiniteSpace space;           // uniform on 2^k points
  FunctionTable values;        // rows of the class, constant on blocks
  std::vector<int> cell_of_point;
};

/// Materialize the uniform 2^k-point space partitioned into blocks of sizes
/// alpha(cell), carrying the bin-top values signature(j)/n per block.
HatConstruction hat_space(const RoundedMeasure& rounded, const CellPartition& cells,
                          long bin_count);

struct HatCheck {
  Rat cell_tail;  // tail under i.i.d. rounded-mass sampling on the cells
  Rat hat_tail;   // tail on the materialized uniform space
  bool equal = false;  // exact rational equality
};

/// The measure-transfer identity: sampling cells with the rounded masses and
/// sampling the uniform block space give identical sup-tail values for any
/// per-cell value table (both sides exact).
HatCheck hat_distribution_check(const CellPartition& cells, const RoundedMeasure& rounded,
                                const FunctionTable& cell_values, long sample_size,
                                const Rat& threshold, bool strict);

struct HatSweepRow {
  int grid_exponent = 0;
  Rat tail;      // tail at this grid
  Rat gap;       // |tail - exact-mass tail|
  Rat envelope;  // n * cell count * 2^-k
  bool within = false;
};

/// Convergence of the rounded-measure tails to the exact-mass tail as the
/// grid refines; the envelope is the crude coupling bound, checked
/// empirically per grid exponent.
std::vector<HatSweepRow> hat_convergence_sweep(const CellPartition& cells,
                                               const FunctionTable& cell_values,
                                               long sample_size, const Rat& threshold,
                                               bool strict, int grid_min, int grid_max);

}  // namespace suptail
