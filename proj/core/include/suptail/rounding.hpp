#pragma once

#include "suptail/rational.hpp"

namespace suptail {

/// A closed double interval [lo, hi] guaranteed to contain the real value it
/// stands for. Bound evaluation uses the upper end, hypothesis evaluation the
/// side that makes the verdict conservative: a reported violation is genuine.
struct Ival {
  double lo = 0.0;
  double hi = 0.0;
};

/// Nudge a double up/down by enough ulps to absorb libm's rounding error.
double nudge_up(double x);
double nudge_down(double x);

Ival exact_ival(double x);

/// Smallest certified interval around a rational (certified by exact
/// back-conversion, so it is correct even for values outside double range,
/// which clamp to [0, DBL_TRUE_MIN] style endpoints).
Ival ival_from_rational(const Rat& value);

Ival add(const Ival& a, const Ival& b);
Ival sub(const Ival& a, const Ival& b);
Ival mul(const Ival& a, const Ival& b);
Ival div(const Ival& a, const Ival& b);
Ival neg(const Ival& a);

Ival exp_ival(const Ival& a);
/// Natural log; requires a.lo > 0.
Ival log_ival(const Ival& a);
/// log(1 + a); requires a.lo > -1. Keeps precision for tiny a.
Ival log1p_ival(const Ival& a);
/// base^e for base.lo > 0.
Ival pow_ival(const Ival& base, const Ival& e);
Ival sqrt_ival(const Ival& a);
/// log(Gamma(x)) for x.lo >= 1, with a relative slop covering libm's lgamma error.
Ival lgamma_ival(const Ival& x);
/// log C(n, k) as an interval, for n far beyond exact range (via lgamma).
Ival log_binomial_ival(const Ival& n, const Ival& k);

/// Verdict of "lhs <= rhs" when both sides are known only as intervals.
enum class IvalOrder { True, False, Unknown };
IvalOrder certify_le(const Ival& lhs, const Ival& rhs);

}  // namespace suptail
