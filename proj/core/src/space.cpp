#include "suptail/space.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "suptail/combinatorics.hpp"

namespace suptail {

FiniteSpace::FiniteSpace(std::vector<Rat> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("a finite space needs at least one point");
  }
  Rat total = 0;
  for (const Rat& w : weights_) {
    if (w < 0) throw std::invalid_argument("negative weight in finite space");
    total += w;
  }
  if (total != 1) {
    throw std::invalid_argument("weights must sum to exactly 1, got " + format_rational(total));
  }
}

FiniteSpace FiniteSpace::uniform(int point_count) {
  if (point_count < 1) throw std::invalid_argument("uniform space needs >= 1 point");
  return FiniteSpace(std::vector<Rat>(static_cast<std::size_t>(point_count),
                                      Rat(1, point_count)));
}

FiniteSpace make_uniform_space(int point_count) { return FiniteSpace::uniform(point_count); }

FunctionTable::FunctionTable(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) throw std::invalid_argument("a function table needs at least one row");
  rows_ = static_cast<int>(rows.size());
  cols_ = static_cast<int>(rows.front().size());
  if (cols_ < 1) throw std::invalid_argument("a function table needs at least one column");
  values_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) {
      throw std::invalid_argument("ragged function table");
    }
    for (const Rat& v : row) {
      if (v < 0 || v > 1) {
        throw std::invalid_argument("function value outside [0, 1]: " + format_rational(v));
      }
      values_.push_back(v);
    }
  }
}

std::vector<Rat> FunctionTable::row(int row) const {
  const auto begin = values_.begin() + static_cast<std::ptrdiff_t>(row) * cols_;
  return std::vector<Rat>(begin, begin + cols_);
}

FunctionTable FunctionTable::restrict_columns(const std::vector<int>& columns) const {
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    rows[r].reserve(columns.size());
    for (int c : columns) rows[r].push_back(at(r, c));
  }
  return FunctionTable(std::move(rows));
}

Rat sup_mean(const FunctionTable& table, const FiniteSpace& space) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("table columns do not match space points");
  }
  Rat best = 0;
  for (int r = 0; r < table.row_count(); ++r) {
    Rat mean = 0;
    for (int c = 0; c < table.col_count(); ++c) mean += table.at(r, c) * space.weight(c);
    if (r == 0 || mean > best) best = mean;
  }
  return best;
}

SubsetClassInfo subset_class_info(int point_count, int max_size) {
  if (max_size < 1 || max_size > point_count) {
    throw std::invalid_argument("subset class needs 1 <= max_size <= point_count");
  }
  SubsetClassInfo info;
  info.point_count = point_count;
  info.max_size = max_size;
  info.row_count = 0;
  for (int i = 1; i <= max_size; ++i) info.row_count += binomial(point_count, i);
  return info;
}

namespace {

void emit_subsets_of_size(int point_count, int size, std::vector<int>& current,
                          int next, std::vector<std::vector<Rat>>& rows) {
  if (static_cast<int>(current.size()) == size) {
    std::vector<Rat> row(static_cast<std::size_t>(point_count), Rat(0));
    for (int p : current) row[static_cast<std::size_t>(p)] = 1;
    rows.push_back(std::move(row));
    return;
  }
  for (int p = next; p < point_count; ++p) {
    current.push_back(p);
    emit_subsets_of_size(point_count, size, current, p + 1, rows);
    current.pop_back();
  }
}

}  // namespace

FunctionTable subset_indicator_class(int point_count, int max_size, std::uint64_t row_cap) {
  const SubsetClassInfo info = subset_class_info(point_count, max_size);
  if (info.row_count > row_cap) {
    throw std::invalid_argument(
        "explicit subset class has " + info.row_count.str() + " rows, above the cap of " +
        std::to_string(row_cap) + "; use the implicit handle instead");
  }
  std::vector<std::vector<Rat>> rows;
  rows.reserve(static_cast<std::size_t>(info.row_count));
  std::vector<int> current;
  for (int size = 1; size <= max_size; ++size) {
    emit_subsets_of_size(point_count, size, current, 0, rows);
  }
  return FunctionTable(std::move(rows));
}

namespace {

PartitionAlgebra group_by_signature(const FiniteSpace& space,
                                    const std::vector<std::vector<Rat>>& signatures) {
  std::map<std::vector<Rat>, int> atom_of_signature;
  PartitionAlgebra out;
  for (int p = 0; p < space.point_count(); ++p) {
    auto [it, inserted] = atom_of_signature.try_emplace(signatures[static_cast<std::size_t>(p)],
                                                        out.atom_count());
    if (inserted) {
      out.atoms.emplace_back();
      out.atom_measures.emplace_back(0);
    }
    out.atoms[static_cast<std::size_t>(it->second)].push_back(p);
    out.atom_measures[static_cast<std::size_t>(it->second)] += space.weight(p);
  }
  return out;
}

}  // namespace

PartitionAlgebra atoms_of_level_sets(const FunctionTable& table, const FiniteSpace& space,
                                     const Rat& threshold) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("table columns do not match space points");
  }
  std::vector<std::vector<Rat>> signatures(static_cast<std::size_t>(space.point_count()));
  for (int p = 0; p < space.point_count(); ++p) {
    signatures[static_cast<std::size_t>(p)].reserve(static_cast<std::size_t>(table.row_count()));
    for (int r = 0; r < table.row_count(); ++r) {
      signatures[static_cast<std::size_t>(p)].emplace_back(table.at(r, p) >= threshold ? 1 : 0);
    }
  }
  return group_by_signature(space, signatures);
}

PartitionAlgebra signature_atoms(const FunctionTable& table, const FiniteSpace& space) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("table columns do not match space points");
  }
  std::vector<std::vector<Rat>> signatures(static_cast<std::size_t>(space.point_count()));
  for (int p = 0; p < space.point_count(); ++p) {
    signatures[static_cast<std::size_t>(p)].reserve(static_cast<std::size_t>(table.row_count()));
    for (int r = 0; r < table.row_count(); ++r) {
      signatures[static_cast<std::size_t>(p)].push_back(table.at(r, p));
    }
  }
  return group_by_signature(space, signatures);
}

}  // namespace suptail
