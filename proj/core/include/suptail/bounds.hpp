#pragma once

#include <string>
#include <vector>

#include "suptail/rounding.hpp"
#include "suptail/tail_exact.hpp"

namespace suptail {

// Closed-form bound values, evaluated as round-up floats. Verdicts against
// exact left-hand sides never go through these: use the exact comparators
// below, which survive even when the float value underflows to zero.

/// D * rho^(u/50)
double bound_theorem1(double density_param, const Rat& mean_cap, double threshold);
/// 2 * D * rho^(p/4)
double bound_theorem1A(double density_param, const Rat& mean_cap, double power);
/// D * rho^(p/4)
double bound_lemma21(double density_param, const Rat& mean_cap, double power);
/// 2 * D * rho^(u/25)
double bound_lemma31(double density_param, const Rat& mean_cap, double threshold);

/// Exact verdict of lhs <= coefficient * base^(exp_num/exp_den) for
/// nonnegative rationals (raise both sides to exp_den). No rounding anywhere.
bool power_bound_holds(const Rat& lhs, const Rat& coefficient, const Rat& base,
                       long exp_num, long exp_den);

/// log10(bound) - log10(lhs); +infinity when lhs == 0.
double power_bound_margin_log10(const Rat& lhs, const Rat& coefficient, const Rat& base,
                                long exp_num, long exp_den);

/// Assemble a BoundComparison for lhs <= coefficient * base^(exp_num/exp_den):
/// exact verdict, round-up float display value, log-domain margin.
BoundComparison compare_power_bound(const std::string& name, const Rat& lhs,
                                    const Rat& coefficient, const Rat& base, long exp_num,
                                    long exp_den, bool in_regime = true);

/// Same for a plain rational bound (exponent 1, coefficient the bound itself).
BoundComparison compare_rational_bound(const std::string& name, const Rat& lhs,
                                       const Rat& bound, bool in_regime = true);

enum class Statement { Theorem1, Theorem1A, Lemma21, Lemma31 };

struct HypothesisCheck {
  std::string hypothesis;
  bool holds = false;
  bool informational = false;  // side conditions quoted in passing, not part of the statement
};

struct RegimeParams {
  Rat density_param{1};     // D
  Rat density_exponent{1};  // L, kept rational so powers stay exact
  Rat mean_cap{0};          // rho
  long sample_size = 0;     // n
  Rat threshold{0};         // u
  long power = 0;           // p
  long base_points = 0;     // N0 (0 = not supplied)
  int level_exponent = -1;  // k with N = 2^k (-1 = not supplied)
};

/// Every hypothesis of the named statement, evaluated exactly.
std::vector<HypothesisCheck> regime_check(Statement statement, const RegimeParams& params);

/// True when every non-informational hypothesis holds.
bool in_regime(const std::vector<HypothesisCheck>& checks);

}  // namespace suptail
