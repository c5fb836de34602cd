#include "suptail/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace suptail {

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) {
    throw std::invalid_argument(std::string("unexpected end of input, wanted ") + what);
  }
  return token;
}

int next_count(std::istream& in, const char* what) {
  const std::string token = next_token(in, what);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size() || value < 1) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + ": '" + token + "'");
  }
}

}  // namespace

void write_space(std::ostream& out, const FiniteSpace& space) {
  out << "space " << space.point_count() << "\n";
  for (int p = 0; p < space.point_count(); ++p) {
    out << format_rational(space.weight(p)) << (p + 1 == space.point_count() ? "\n" : " ");
  }
}

FiniteSpace read_space(std::istream& in) {
  const std::string header = next_token(in, "'space' header");
  if (header != "space") {
    throw std::invalid_argument("expected 'space' header, got '" + header + "'");
  }
  const int n = next_count(in, "point count");
  std::vector<Rat> weights;
  weights.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) weights.push_back(parse_rational(next_token(in, "weight")));
  return FiniteSpace(std::move(weights));
}

void write_table(std::ostream& out, const FunctionTable& table) {
  out << "class " << table.row_count() << " " << table.col_count() << "\n";
  for (int r = 0; r < table.row_count(); ++r) {
    for (int c = 0; c < table.col_count(); ++c) {
      out << format_rational(table.at(r, c)) << (c + 1 == table.col_count() ? "\n" : " ");
    }
  }
}

FunctionTable read_table(std::istream& in) {
  const std::string header = next_token(in, "'class' header");
  if (header != "class") {
    throw std::invalid_argument("expected 'class' header, got '" + header + "'");
  }
  const int rows = next_count(in, "row count");
  const int cols = next_count(in, "column count");
  std::vector<std::vector<Rat>> values(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    values[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) {
      values[static_cast<std::size_t>(r)].push_back(parse_rational(next_token(in, "value")));
    }
  }
  return FunctionTable(std::move(values));
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void save_space(const std::string& path, const FiniteSpace& space) {
  auto out = open_out(path);
  write_space(out, space);
}

FiniteSpace load_space(const std::string& path) {
  auto in = open_in(path);
  return read_space(in);
}

void save_table(const std::string& path, const FunctionTable& table) {
  auto out = open_out(path);
  write_table(out, table);
}

FunctionTable load_table(const std::string& path) {
  auto in = open_in(path);
  return read_table(in);
}

}  // namespace suptail
