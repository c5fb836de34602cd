#include "suptail/discretize.hpp"

#include <map>
#include <stdexcept>

#include "suptail/tail_exact.hpp"

namespace suptail {

namespace {

int bin_index(const Rat& value, long bin_count) {
  // bin 1 is [0, 1/n]; bin s is ((s-1)/n, s/n]
  if (value * bin_count <= 1) return 1;
  const BigInt idx = ceil_rational(value * bin_count);
  return static_cast<int>(idx);
}

}  // namespace

CellPartition cell_partition(const FunctionTable& table, const FiniteSpace& space,
                             long bin_count) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("cell_partition: table columns do not match space points");
  }
  if (bin_count < 2) throw std::invalid_argument("cell_partition: bin count must be >= 2");

  std::map<std::vector<int>, ValueCell> cells;
  for (int p = 0; p < space.point_count(); ++p) {
    if (space.weight(p) == 0) continue;  // carried no mass: dropped from the refined space
    std::vector<int> signature(static_cast<std::size_t>(table.row_count()));
    for (int r = 0; r < table.row_count(); ++r) {
      signature[static_cast<std::size_t>(r)] = bin_index(table.at(r, p), bin_count);
    }
    auto [it, inserted] = cells.try_emplace(signature);
    if (inserted) {
      it->second.signature = signature;
      it->second.measure = 0;
    }
    it->second.points.push_back(p);
    it->second.measure += space.weight(p);
  }
  CellPartition out;
  out.bin_count = bin_count;
  out.cells.reserve(cells.size());
  for (auto& [signature, cell] : cells) out.cells.push_back(std::move(cell));
  return out;
}

FunctionTable cell_average(const FunctionTable& table, const FiniteSpace& space,
                           const CellPartition& cells) {
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(table.row_count()));
  for (int r = 0; r < table.row_count(); ++r) {
    rows[static_cast<std::size_t>(r)] = table.row(r);  // zero-mass points keep their values
  }
  for (const ValueCell& cell : cells.cells) {
    for (int r = 0; r < table.row_count(); ++r) {
      Rat integral = 0;
      for (int p : cell.points) integral += table.at(r, p) * space.weight(p);
      const Rat mean = integral / cell.measure;
      for (int p : cell.points) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] = mean;
    }
  }
  return FunctionTable(std::move(rows));
}

FunctionTable cell_value_table(const FunctionTable& table, const FiniteSpace& space,
                               const CellPartition& cells) {
  std::vector<std::vector<Rat>> rows(
      static_cast<std::size_t>(table.row_count()),
      std::vector<Rat>(static_cast<std::size_t>(cells.cell_count())));
  for (int c = 0; c < cells.cell_count(); ++c) {
    const ValueCell& cell = cells.cells[static_cast<std::size_t>(c)];
    for (int r = 0; r < table.row_count(); ++r) {
      Rat integral = 0;
      for (int p : cell.points) integral += table.at(r, p) * space.weight(p);
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = integral / cell.measure;
    }
  }
  return FunctionTable(std::move(rows));
}

FunctionTable bin_top_table(const CellPartition& cells) {
  if (cells.cells.empty()) throw std::invalid_argument("bin_top_table: empty partition");
  const std::size_t rows = cells.cells.front().signature.size();
  std::vector<std::vector<Rat>> values(rows,
                                       std::vector<Rat>(static_cast<std::size_t>(cells.cell_count())));
  for (int c = 0; c < cells.cell_count(); ++c) {
    const ValueCell& cell = cells.cells[static_cast<std::size_t>(c)];
    for (std::size_t r = 0; r < rows; ++r) {
      values[r][static_cast<std::size_t>(c)] = Rat(cell.signature[r], cells.bin_count);
    }
  }
  return FunctionTable(std::move(values));
}

RoundedMeasure round_measure(const std::vector<Rat>& masses, int grid_exponent) {
  if (grid_exponent < 0) throw std::invalid_argument("round_measure: grid exponent must be >= 0");
  if (masses.empty()) throw std::invalid_argument("round_measure: empty mass vector");
  Rat total = 0;
  for (const Rat& m : masses) {
    if (m < 0) throw std::invalid_argument("round_measure: negative mass");
    total += m;
  }
  if (total != 1) throw std::invalid_argument("round_measure: masses must sum to exactly 1");

  const BigInt grid = BigInt(1) << grid_exponent;
  RoundedMeasure out;
  out.grid_exponent = grid_exponent;
  Rat prefix = 0;
  BigInt prev_ceiling = 0;
  for (const Rat& m : masses) {
    prefix += m;
    const BigInt ceiling = ceil_rational(prefix * grid);
    out.cumulative_ceilings.push_back(ceiling);
    out.multipliers.push_back(ceiling - prev_ceiling);
    out.masses.emplace_back(Rat(ceiling - prev_ceiling, grid));
    prev_ceiling = ceiling;
  }
  return out;
}

HatConstruction hat_space(const RoundedMeasure& rounded, const CellPartition& cells,
                          long bin_count) {
  if (static_cast<int>(rounded.masses.size()) != cells.cell_count()) {
    throw std::invalid_argument("hat_space: rounded masses do not match the cell count");
  }
  if (bin_count != cells.bin_count) {
    throw std::invalid_argument("hat_space: bin count mismatch");
  }
  BigInt total = 0;
  for (const BigInt& alpha : rounded.multipliers) total += alpha;
  const BigInt expected = BigInt(1) << rounded.grid_exponent;
  if (total != expected) {
    throw std::logic_error("hat_space: multipliers do not fill the dyadic grid");
  }
  if (expected > 1 << 22) {
    throw std::invalid_argument("hat_space: 2^k points exceed the materialization cap (k <= 22)");
  }
  const int point_count = static_cast<int>(expected);
  const std::size_t rows = cells.cells.front().signature.size();

  HatConstruction out{FiniteSpace::uniform(point_count),
                      FunctionTable(std::vector<std::vector<Rat>>(
                          rows, std::vector<Rat>(static_cast<std::size_t>(point_count), Rat(0)))),
                      std::vector<int>(static_cast<std::size_t>(point_count), -1)};

  std::vector<std::vector<Rat>> values(rows,
                                       std::vector<Rat>(static_cast<std::size_t>(point_count)));
  int next_point = 0;
  for (int c = 0; c < cells.cell_count(); ++c) {
    const auto block = static_cast<long>(rounded.multipliers[static_cast<std::size_t>(c)]);
    for (long i = 0; i < block; ++i, ++next_point) {
      out.cell_of_point[static_cast<std::size_t>(next_point)] = c;
      for (std::size_t r = 0; r < rows; ++r) {
        values[r][static_cast<std::size_t>(next_point)] =
            Rat(cells.cells[static_cast<std::size_t>(c)].signature[r], bin_count);
      }
    }
  }
  out.values = FunctionTable(std::move(values));
  return out;
}

HatCheck hat_distribution_check(const CellPartition& cells, const RoundedMeasure& rounded,
                                const FunctionTable& cell_values, long sample_size,
                                const Rat& threshold, bool strict) {
  if (cell_values.col_count() != cells.cell_count()) {
    throw std::invalid_argument("hat_distribution_check: cell values do not match the partition");
  }
  HatCheck out;
  // side one: i.i.d. draws of cells under the rounded masses
  out.cell_tail = exact_sup_tail(cell_values, FiniteSpace(rounded.masses), sample_size,
                                 threshold, strict)
                      .probability;
  // side two: the materialized uniform block space carrying the same values
  const HatConstruction hat = hat_space(rounded, cells, cells.bin_count);
  std::vector<std::vector<Rat>> expanded(static_cast<std::size_t>(cell_values.row_count()));
  for (int r = 0; r < cell_values.row_count(); ++r) {
    auto& row = expanded[static_cast<std::size_t>(r)];
    row.resize(static_cast<std::size_t>(hat.space.point_count()));
    for (int p = 0; p < hat.space.point_count(); ++p) {
      row[static_cast<std::size_t>(p)] = cell_values.at(r, hat.cell_of_point[static_cast<std::size_t>(p)]);
    }
  }
  out.hat_tail = exact_sup_tail(FunctionTable(std::move(expanded)), hat.space, sample_size,
                                threshold, strict)
                     .probability;
  out.equal = out.cell_tail == out.hat_tail;
  return out;
}

std::vector<HatSweepRow> hat_convergence_sweep(const CellPartition& cells,
                                               const FunctionTable& cell_values,
                                               long sample_size, const Rat& threshold,
                                               bool strict, int grid_min, int grid_max) {
  if (grid_min < 0 || grid_max < grid_min) {
    throw std::invalid_argument("hat_convergence_sweep: bad grid range");
  }
  std::vector<Rat> exact_masses;
  exact_masses.reserve(cells.cells.size());
  for (const ValueCell& cell : cells.cells) exact_masses.push_back(cell.measure);
  const Rat exact_tail =
      exact_sup_tail(cell_values, FiniteSpace(exact_masses), sample_size, threshold, strict)
          .probability;

  std::vector<HatSweepRow> rows;
  for (int k = grid_min; k <= grid_max; ++k) {
    const RoundedMeasure rounded = round_measure(exact_masses, k);
    HatSweepRow row;
    row.grid_exponent = k;
    row.tail = exact_sup_tail(cell_values, FiniteSpace(rounded.masses), sample_size, threshold,
                              strict)
                   .probability;
    row.gap = row.tail >= exact_tail ? row.tail - exact_tail : exact_tail - row.tail;
    row.envelope = Rat(sample_size) * Rat(cells.cell_count()) / (BigInt(1) << k);
    row.within = row.gap <= row.envelope;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace suptail
