#pragma once

#include <iosfwd>
#include <string>

#include "suptail/space.hpp"

namespace suptail {

// Line-oriented exact text format:
//   space N
//   p/q p/q ... (N weights)
//   class R N
//   p/q ... (N values)   x R rows
// Round-trips are exact; rationals are written in lowest terms.

void write_space(std::ostream& out, const FiniteSpace& space);
FiniteSpace read_space(std::istream& in);

void write_table(std::ostream& out, const FunctionTable& table);
FunctionTable read_table(std::istream& in);

void save_space(const std::string& path, const FiniteSpace& space);
FiniteSpace load_space(const std::string& path);
void save_table(const std::string& path, const FunctionTable& table);
FunctionTable load_table(const std::string& path);

}  // namespace suptail
