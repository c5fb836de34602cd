#include "suptail/rounding.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace suptail {

namespace {

constexpr int kUlpSlack = 4;        // covers arithmetic + conversion error
constexpr int kLibmUlpSlack = 16;   // exp/log/lgamma are not correctly rounded

double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

}  // namespace

double nudge_up(double x) { return step_up(x, kUlpSlack); }
double nudge_down(double x) { return step_down(x, kUlpSlack); }

Ival exact_ival(double x) { return {x, x}; }

Ival ival_from_rational(const Rat& value) {
  const double mid = to_double(value);
  double lo;
  double hi;
  if (std::isfinite(mid)) {
    lo = nudge_down(mid);
    hi = nudge_up(mid);
  } else if (mid > 0) {
    lo = std::numeric_limits<double>::max();
    hi = std::numeric_limits<double>::infinity();
  } else {
    lo = -std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::max();
  }
  // Certify by exact comparison; widen further in the rare case the
  // conversion was more than kUlpSlack ulps off.
  while (std::isfinite(lo) && rational_from_double(lo) > value) lo = step_down(lo, 8);
  while (std::isfinite(hi) && rational_from_double(hi) < value) hi = step_up(hi, 8);
  return {lo, hi};
}

Ival add(const Ival& a, const Ival& b) { return {nudge_down(a.lo + b.lo), nudge_up(a.hi + b.hi)}; }

Ival sub(const Ival& a, const Ival& b) { return {nudge_down(a.lo - b.hi), nudge_up(a.hi - b.lo)}; }

Ival neg(const Ival& a) { return {-a.hi, -a.lo}; }

Ival mul(const Ival& a, const Ival& b) {
  const double cands[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  double lo = cands[0];
  double hi = cands[0];
  for (double c : cands) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {nudge_down(lo), nudge_up(hi)};
}

Ival div(const Ival& a, const Ival& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) {
    throw std::domain_error("interval division by an interval containing zero");
  }
  const double cands[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  double lo = cands[0];
  double hi = cands[0];
  for (double c : cands) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {nudge_down(lo), nudge_up(hi)};
}

Ival exp_ival(const Ival& a) {
  double lo = step_down(std::exp(a.lo), kLibmUlpSlack);
  double hi = step_up(std::exp(a.hi), kLibmUlpSlack);
  if (lo < 0.0) lo = 0.0;
  return {lo, hi};
}

Ival log_ival(const Ival& a) {
  if (a.lo <= 0.0) throw std::domain_error("interval log of a non-positive interval");
  return {step_down(std::log(a.lo), kLibmUlpSlack), step_up(std::log(a.hi), kLibmUlpSlack)};
}

Ival log1p_ival(const Ival& a) {
  if (a.lo <= -1.0) throw std::domain_error("interval log1p below -1");
  return {step_down(std::log1p(a.lo), kLibmUlpSlack), step_up(std::log1p(a.hi), kLibmUlpSlack)};
}

Ival pow_ival(const Ival& base, const Ival& e) {
  return exp_ival(mul(log_ival(base), e));
}

Ival sqrt_ival(const Ival& a) {
  if (a.lo < 0.0) throw std::domain_error("interval sqrt of a negative interval");
  return {step_down(std::sqrt(a.lo), kUlpSlack), step_up(std::sqrt(a.hi), kUlpSlack)};
}

Ival lgamma_ival(const Ival& x) {
  if (x.lo < 1.0) throw std::domain_error("lgamma interval restricted to x >= 1");
  // lgamma is monotone increasing on [2, inf) and bounded by |result|*eps slop;
  // on [1, 2] it dips slightly below zero, so widen by an absolute floor too.
  const double slop_lo = std::abs(std::lgamma(x.lo)) * 1e-14 + 1e-14;
  const double slop_hi = std::abs(std::lgamma(x.hi)) * 1e-14 + 1e-14;
  double lo = std::lgamma(x.lo);
  double hi = std::lgamma(x.hi);
  if (lo > hi) std::swap(lo, hi);  // handles the dip on [1, 2]
  return {step_down(lo - slop_lo, kUlpSlack), step_up(hi + slop_hi, kUlpSlack)};
}

Ival log_binomial_ival(const Ival& n, const Ival& k) {
  if (k.lo < 0 || k.hi > n.hi) throw std::domain_error("log_binomial outside 0 <= k <= n");
  const Ival ln = lgamma_ival(add(n, {1.0, 1.0}));
  const Ival lk = lgamma_ival(add(k, {1.0, 1.0}));
  const Ival lnk = lgamma_ival(add(sub(n, k), {1.0, 1.0}));
  return sub(ln, add(lk, lnk));
}

IvalOrder certify_le(const Ival& lhs, const Ival& rhs) {
  if (lhs.hi <= rhs.lo) return IvalOrder::True;
  if (lhs.lo > rhs.hi) return IvalOrder::False;
  return IvalOrder::Unknown;
}

}  // namespace suptail
