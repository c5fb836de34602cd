#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace suptail {

// All measures, integrals and tail probabilities in the lab are exact
// rationals; floating point only ever appears on the bound-evaluation side.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Parse "p/q" or "p" (optional leading sign, arbitrary precision).
/// Throws std::invalid_argument on malformed input or q == 0.
Rat parse_rational(const std::string& text);

/// Render as "p/q", or "p" when the denominator is 1. Inverse of parse_rational.
std::string format_rational(const Rat& value);

/// base^exp for integer exp (negative allowed when base != 0).
Rat pow_rational(const Rat& base, long exp);

/// Exact conversion of a finite double into a rational.
Rat rational_from_double(double value);

/// Nearest-double conversion; underflows/overflows saturate like a quotient of doubles would.
double to_double(const Rat& value);

/// log10 of a positive rational, accurate to ~1e-12 relative even far outside
/// double range (used for margin reporting only, never for comparisons).
double log10_rational(const Rat& value);

/// Largest integer <= value.
BigInt floor_rational(const Rat& value);

/// Smallest integer >= value.
BigInt ceil_rational(const Rat& value);

}  // namespace suptail
