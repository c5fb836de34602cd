#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace suptail {

/// A rectangular verdict table with a stable column order; the common
/// currency between scenario runners, CSV/JSON artifacts and the console.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Deterministic float rendering (%.12g); all artifacts use this.
std::string format_double(double value);
std::string format_bool(bool value);

void write_csv(std::ostream& out, const ReportTable& table);
void write_json(std::ostream& out, const ReportTable& table);
void write_human(std::ostream& out, const ReportTable& table);

}  // namespace suptail
