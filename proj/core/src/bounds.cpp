#include "suptail/bounds.hpp"

#include <limits>
#include <stdexcept>

namespace suptail {

namespace {

void check_bound_params(double density_param, const Rat& mean_cap, double exponent_arg) {
  if (density_param < 1.0) throw std::invalid_argument("bound: density parameter must be >= 1");
  if (mean_cap <= 0 || mean_cap >= 1) throw std::invalid_argument("bound: mean cap must lie in (0, 1)");
  if (exponent_arg <= 0) throw std::invalid_argument("bound: threshold/power must be > 0");
}

double rho_power_up(double coefficient, const Rat& mean_cap, double exponent) {
  const Ival value = mul(exact_ival(coefficient),
                         pow_ival(ival_from_rational(mean_cap), exact_ival(exponent)));
  return value.hi;
}

}  // namespace

double bound_theorem1(double density_param, const Rat& mean_cap, double threshold) {
  check_bound_params(density_param, mean_cap, threshold);
  return rho_power_up(density_param, mean_cap, threshold / 50.0);
}

double bound_theorem1A(double density_param, const Rat& mean_cap, double power) {
  check_bound_params(density_param, mean_cap, power);
  return rho_power_up(2.0 * density_param, mean_cap, power / 4.0);
}

double bound_lemma21(double density_param, const Rat& mean_cap, double power) {
  check_bound_params(density_param, mean_cap, power);
  return rho_power_up(density_param, mean_cap, power / 4.0);
}

double bound_lemma31(double density_param, const Rat& mean_cap, double threshold) {
  check_bound_params(density_param, mean_cap, threshold);
  return rho_power_up(2.0 * density_param, mean_cap, threshold / 25.0);
}

bool power_bound_holds(const Rat& lhs, const Rat& coefficient, const Rat& base,
                       long exp_num, long exp_den) {
  if (lhs < 0 || coefficient < 0 || base <= 0) {
    throw std::invalid_argument("power_bound_holds: needs lhs, coef >= 0 and base > 0");
  }
  if (exp_den < 1) throw std::invalid_argument("power_bound_holds: exp_den must be >= 1");
  // lhs <= coef * base^(num/den)  <=>  lhs^den <= coef^den * base^num
  return pow_rational(lhs, exp_den) <=
         pow_rational(coefficient, exp_den) * pow_rational(base, exp_num);
}

double power_bound_margin_log10(const Rat& lhs, const Rat& coefficient, const Rat& base,
                                long exp_num, long exp_den) {
  if (lhs == 0) return std::numeric_limits<double>::infinity();
  const double bound_log = log10_rational(coefficient) + static_cast<double>(exp_num) /
                                                             static_cast<double>(exp_den) *
                                                             log10_rational(base);
  return bound_log - log10_rational(lhs);
}

BoundComparison compare_power_bound(const std::string& name, const Rat& lhs,
                                    const Rat& coefficient, const Rat& base, long exp_num,
                                    long exp_den, bool in_regime) {
  BoundComparison cmp;
  cmp.name = name;
  cmp.in_regime = in_regime;
  cmp.satisfied = power_bound_holds(lhs, coefficient, base, exp_num, exp_den);
  cmp.margin_log10 = power_bound_margin_log10(lhs, coefficient, base, exp_num, exp_den);
  const Ival value =
      mul(ival_from_rational(coefficient),
          pow_ival(ival_from_rational(base),
                   exact_ival(static_cast<double>(exp_num) / static_cast<double>(exp_den))));
  cmp.value = value.hi;
  return cmp;
}

BoundComparison compare_rational_bound(const std::string& name, const Rat& lhs,
                                       const Rat& bound, bool in_regime) {
  BoundComparison cmp;
  cmp.name = name;
  cmp.in_regime = in_regime;
  cmp.satisfied = lhs <= bound;
  cmp.value = ival_from_rational(bound).hi;
  cmp.margin_log10 = lhs == 0 ? std::numeric_limits<double>::infinity()
                              : (bound == 0 ? -std::numeric_limits<double>::infinity()
                                            : log10_rational(bound) - log10_rational(lhs));
  return cmp;
}

namespace {

void push(std::vector<HypothesisCheck>& out, std::string name, bool holds,
          bool informational = false) {
  out.push_back({std::move(name), holds, informational});
}

}  // namespace

std::vector<HypothesisCheck> regime_check(Statement statement, const RegimeParams& p) {
  std::vector<HypothesisCheck> out;
  const Rat& rho = p.mean_cap;
  const Rat& L = p.density_exponent;
  switch (statement) {
    case Statement::Theorem1: {
      push(out, "D >= 1", p.density_param >= 1);
      push(out, "L >= 1", L >= 1);
      push(out, "n >= 2", p.sample_size >= 2);
      push(out, "0 < rho", rho > 0);
      push(out, "rho <= n^-200",
           rho > 0 && p.sample_size >= 1 &&
               rho * pow_rational(Rat(p.sample_size), 200) <= 1);
      push(out, "u > 41L", p.threshold > 41 * L);
      break;
    }
    case Statement::Theorem1A: {
      push(out, "D >= 1", p.density_param >= 1);
      push(out, "L >= 1", L >= 1);
      push(out, "rho <= 1/1000", rho > 0 && rho <= Rat(1, 1000));
      push(out, "rho <= L^-20", rho > 0 && L >= 1 && rho * pow_rational(L, 20) <= 1);
      push(out, "p >= 2L", Rat(p.power) >= 2 * L);
      push(out, "p <= rho^-1/100",
           rho > 0 && p.power >= 1 && pow_rational(Rat(p.power), 100) * rho <= 1);
      if (p.base_points > 0) {
        const Rat n0(p.base_points);
        push(out, "N0 > (1/16) rho^-3/2",
             pow_rational(16 * n0, 2) * pow_rational(rho, 3) > 1);
        push(out, "N0 <= (1/8) rho^-3/2",
             pow_rational(8 * n0, 2) * pow_rational(rho, 3) <= 1);
      }
      break;
    }
    case Statement::Lemma21: {
      push(out, "D >= 1", p.density_param >= 1);
      push(out, "L >= 1", L >= 1);
      push(out, "0 < rho < 1", rho > 0 && rho < 1);
      push(out, "p >= 2L", Rat(p.power) >= 2 * L);
      if (p.base_points > 0) {
        push(out, "N0 <= (1/8) rho^-3/2",
             rho > 0 && pow_rational(Rat(8 * p.base_points), 2) * pow_rational(rho, 3) <= 1);
      }
      break;
    }
    case Statement::Lemma31: {
      push(out, "D >= 1", p.density_param >= 1);
      push(out, "L >= 1", L >= 1);
      push(out, "n >= 2", p.sample_size >= 2);
      push(out, "0 < rho < 1", rho > 0 && rho < 1);
      push(out, "rho <= n^-200",
           rho > 0 && p.sample_size >= 1 &&
               rho * pow_rational(Rat(p.sample_size), 200) <= 1);
      if (p.level_exponent >= 0) {
        const Rat n_points = pow_rational(Rat(2), p.level_exponent);
        push(out, "N = 2^k >= rho^-3/2",
             rho > 0 && pow_rational(n_points, 2) * pow_rational(rho, 3) >= 1);
      }
      push(out, "u >= 40L", p.threshold >= 40 * L);
      // side conditions the argument quotes in passing; tracked, not required
      push(out, "u >= 8L", p.threshold >= 8 * L, true);
      push(out, "u >= (L+1)/4", p.threshold >= (L + 1) / 4, true);
      push(out, "u <= n", p.threshold <= p.sample_size, true);
      break;
    }
  }
  return out;
}

bool in_regime(const std::vector<HypothesisCheck>& checks) {
  for (const auto& check : checks) {
    if (!check.informational && !check.holds) return false;
  }
  return true;
}

}  // namespace suptail
