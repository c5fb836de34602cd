#include "suptail/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace suptail {

void ReportTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("report row width does not match the column count");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string format_bool(bool value) { return value ? "true" : "false"; }

namespace {

bool needs_csv_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_escape(const std::string& field) {
  if (!needs_csv_quoting(field)) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string json_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const ReportTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << csv_escape(table.columns[c]) << (c + 1 == table.columns.size() ? "\n" : ",");
  }
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << csv_escape(row[c]) << (c + 1 == row.size() ? "\n" : ",");
    }
  }
}

void write_json(std::ostream& out, const ReportTable& table) {
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r == 0 ? "\n" : ",\n") << "  {";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c == 0 ? "" : ", ") << '"' << json_escape(table.columns[c]) << "\": \""
          << json_escape(table.rows[r][c]) << '"';
    }
    out << "}";
  }
  out << "\n]\n";
}

void write_human(std::ostream& out, const ReportTable& table) {
  std::vector<std::size_t> widths(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) widths[c] = table.columns[c].size();
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << "\n";
  };
  out << "== " << table.name << " ==\n";
  emit(table.columns);
  for (const auto& row : table.rows) emit(row);
}

}  // namespace suptail
