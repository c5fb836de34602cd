#include "suptail/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace suptail {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) {
      throw std::invalid_argument("not a rational: '" + text + "'");
    }
    return Rat(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  BigInt d(den);
  if (d == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  return Rat(BigInt(num), d);
}

std::string format_rational(const Rat& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat pow_rational(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0 && exp < 0) {
    throw std::domain_error("0 raised to a negative power");
  }
  const unsigned long mag = exp < 0 ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                                    : static_cast<unsigned long>(exp);
  BigInt num = boost::multiprecision::pow(numerator(base), mag);
  BigInt den = boost::multiprecision::pow(denominator(base), mag);
  return exp < 0 ? Rat(den, num) : Rat(num, den);
}

Rat rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error("non-finite double has no rational value");
  }
  if (value == 0.0) return Rat(0);
  int exp2 = 0;
  // mantissa * 2^exp2 == value with mantissa an integer of <= 53 bits
  double mant = std::frexp(value, &exp2);
  while (mant != std::floor(mant)) {
    mant *= 2.0;
    --exp2;
  }
  BigInt m(static_cast<long long>(mant));
  if (exp2 >= 0) {
    return Rat(m << exp2);
  }
  return Rat(m, BigInt(1) << -exp2);
}

double to_double(const Rat& value) { return static_cast<double>(value); }

double log10_rational(const Rat& value) {
  if (value <= 0) {
    throw std::domain_error("log10 of a non-positive rational");
  }
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  // log10(n) = bits(n)*log10(2) + log10(n / 2^bits(n)); the shifted head
  // fits in a double with full precision.
  auto log10_big = [](const BigInt& n) {
    const long bits = static_cast<long>(boost::multiprecision::msb(n)) + 1;
    const long shift = bits > 64 ? bits - 64 : 0;
    const double head = static_cast<double>(BigInt(n >> shift));
    return std::log10(head) + static_cast<double>(shift) * std::log10(2.0);
  };
  return log10_big(num) - log10_big(den);
}

BigInt floor_rational(const Rat& value) {
  BigInt q = numerator(value) / denominator(value);
  if (value < 0 && q * denominator(value) != numerator(value)) --q;
  return q;
}

BigInt ceil_rational(const Rat& value) {
  BigInt q = numerator(value) / denominator(value);
  if (value > 0 && q * denominator(value) != numerator(value)) ++q;
  return q;
}

}  // namespace suptail
