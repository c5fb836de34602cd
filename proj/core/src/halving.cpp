#include "suptail/halving.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "suptail/combinatorics.hpp"

namespace suptail {

namespace {

IvalOrder compare_ival_to_rational(const Ival& value, const Rat& rhs) {
  // value >= rhs ?
  if (std::isfinite(value.lo) && rational_from_double(value.lo) >= rhs) return IvalOrder::True;
  if (std::isfinite(value.hi) && rational_from_double(value.hi) < rhs) return IvalOrder::False;
  return IvalOrder::Unknown;
}

}  // namespace

HalvingSchedule build_schedule(const Rat& mean_cap, const BigInt& base_points, int max_level) {
  if (mean_cap <= 0 || mean_cap >= 1) {
    throw std::invalid_argument("build_schedule: mean cap must lie in (0, 1)");
  }
  if (base_points < 1) throw std::invalid_argument("build_schedule: base_points must be >= 1");
  if (max_level < 0 || max_level > 64) {
    throw std::invalid_argument("build_schedule: level range is [0, 64]");
  }

  HalvingSchedule schedule;
  schedule.base_mean_cap = mean_cap;
  schedule.base_points = base_points;
  schedule.window_low_ok =
      pow_rational(Rat(16 * base_points), 2) * pow_rational(mean_cap, 3) > 1;
  schedule.window_high_ok =
      pow_rational(Rat(8 * base_points), 2) * pow_rational(mean_cap, 3) <= 1;

  const Rat half_cap = mean_cap / 2;
  Ival cap = ival_from_rational(mean_cap);
  Rat correction = 1 + mean_cap;  // level 0 factor
  for (int k = 0; k <= max_level; ++k) {
    HalvingLevel level;
    level.level = k;
    level.points = base_points << k;
    level.mean_cap = cap;
    level.correction = correction;
    level.at_least_half_base = compare_ival_to_rational(cap, half_cap);
    schedule.levels.push_back(level);

    // next level: divide the cap by (1 + 3 * points^(-1/8))
    const Ival points_iv = ival_from_rational(Rat(level.points));
    const Ival eighth_root = pow_ival(points_iv, {0.125, 0.125});
    const Ival factor = add({1.0, 1.0}, div({3.0, 3.0}, eighth_root));
    cap = div(cap, factor);
    correction *= 1 + Rat(1, BigInt(1) << (k + 1)) * mean_cap;
  }
  return schedule;
}

std::vector<int> PairingState::selected_half() const {
  std::vector<int> half;
  half.reserve(pairs.size());
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    half.push_back(signs[l] > 0 ? pairs[l].first : pairs[l].second);
  }
  return half;
}

void PairingState::validate() const {
  if (pairs.empty()) throw std::invalid_argument("pairing: needs at least one pair");
  if (signs.size() != pairs.size()) throw std::invalid_argument("pairing: one sign per pair");
  std::vector<int> seen;
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    if (signs[l] != 1 && signs[l] != -1) throw std::invalid_argument("pairing: signs must be +/-1");
    seen.push_back(pairs[l].first);
    seen.push_back(pairs[l].second);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != static_cast<int>(i)) {
      throw std::invalid_argument("pairing: must be a perfect matching on 0..2N-1");
    }
  }
}

PairingState identity_pairing(int pair_count) {
  if (pair_count < 1) throw std::invalid_argument("identity_pairing: need >= 1 pair");
  PairingState state;
  state.pairs.reserve(static_cast<std::size_t>(pair_count));
  for (int l = 0; l < pair_count; ++l) state.pairs.emplace_back(2 * l, 2 * l + 1);
  state.signs.assign(static_cast<std::size_t>(pair_count), 1);
  return state;
}

PairingState random_pairing(int pair_count, SampleStream& stream) {
  if (pair_count < 1) throw std::invalid_argument("random_pairing: need >= 1 pair");
  std::vector<int> points(static_cast<std::size_t>(2 * pair_count));
  std::iota(points.begin(), points.end(), 0);
  for (std::size_t i = points.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.next_below(i + 1));
    std::swap(points[i], points[j]);
  }
  PairingState state;
  state.pairs.reserve(static_cast<std::size_t>(pair_count));
  state.signs.reserve(static_cast<std::size_t>(pair_count));
  for (int l = 0; l < pair_count; ++l) {
    state.pairs.emplace_back(points[static_cast<std::size_t>(2 * l)],
                             points[static_cast<std::size_t>(2 * l + 1)]);
    state.signs.push_back(stream.next() & 1u ? 1 : -1);
  }
  return state;
}

Rat randomized_sum(const std::vector<Rat>& values, const PairingState& pairing) {
  pairing.validate();
  if (static_cast<int>(values.size()) != pairing.point_count()) {
    throw std::invalid_argument("randomized_sum: values do not match pairing size");
  }
  Rat total = 0;
  for (std::size_t l = 0; l < pairing.pairs.size(); ++l) {
    const auto& [a, b] = pairing.pairs[l];
    total += pairing.signs[l] *
             (values[static_cast<std::size_t>(a)] - values[static_cast<std::size_t>(b)]);
  }
  return total;
}

double hoeffding_diff_bound(const std::vector<Rat>& pair_diffs, const Rat& z) {
  if (z <= 0) throw std::invalid_argument("hoeffding bound: z must be > 0");
  Rat sum_sq = 0;
  for (const Rat& d : pair_diffs) sum_sq += d * d;
  if (sum_sq == 0) return 1.0;
  const Rat exponent = Rat(-2) * z * z / sum_sq;
  return exp_ival(ival_from_rational(exponent)).hi;
}

double hoeffding_count_bound(std::int64_t points, const Rat& next_mean_cap, const Rat& z) {
  if (z <= 0) throw std::invalid_argument("hoeffding bound: z must be > 0");
  if (points < 1 || next_mean_cap <= 0) {
    throw std::invalid_argument("hoeffding bound: needs points >= 1 and a positive cap");
  }
  const Rat exponent = -z * z / (2 * points * next_mean_cap);
  return exp_ival(ival_from_rational(exponent)).hi;
}

HoeffdingBounds hoeffding_bounds(const std::vector<Rat>& pair_diffs, std::int64_t points,
                                 const Rat& next_mean_cap, const Rat& z) {
  HoeffdingBounds out;
  Rat sum_sq = 0;
  for (const Rat& d : pair_diffs) sum_sq += d * d;
  out.degenerate = sum_sq == 0;
  out.from_diffs = hoeffding_diff_bound(pair_diffs, z);
  out.from_mean_cap = hoeffding_count_bound(points, next_mean_cap, z);
  out.mean_cap_valid = sum_sq <= 4 * points * next_mean_cap;
  return out;
}

namespace {

constexpr int kSignEnumerationCap = 20;

struct SignedSetup {
  std::vector<std::int64_t> diff_num;  // pair differences over common_den
  std::int64_t common_den = 1;
};

SignedSetup signed_setup(const std::vector<Rat>& values, const PairingState& pairing) {
  pairing.validate();
  if (static_cast<int>(values.size()) != pairing.point_count()) {
    throw std::invalid_argument("signed tail: values do not match pairing size");
  }
  if (pairing.pair_count() > kSignEnumerationCap) {
    throw std::invalid_argument("signed tail: pair count above the 2^N enumeration cap of " +
                                std::to_string(kSignEnumerationCap));
  }
  std::vector<Rat> diffs;
  diffs.reserve(pairing.pairs.size());
  BigInt den = 1;
  for (const auto& [a, b] : pairing.pairs) {
    diffs.push_back(values[static_cast<std::size_t>(a)] - values[static_cast<std::size_t>(b)]);
    den = boost::multiprecision::lcm(den, denominator(diffs.back()));
  }
  if (den > BigInt(1) << 40) {
    throw std::invalid_argument("signed tail: value denominators too large for exact enumeration");
  }
  SignedSetup s;
  s.common_den = static_cast<std::int64_t>(den);
  for (const Rat& d : diffs) {
    s.diff_num.push_back(static_cast<std::int64_t>(BigInt(numerator(d) * (den / denominator(d)))));
  }
  return s;
}

}  // namespace

Rat exact_signed_tail(const std::vector<Rat>& values, const PairingState& pairing, const Rat& z) {
  const SignedSetup s = signed_setup(values, pairing);
  const int m = static_cast<int>(s.diff_num.size());

  // event: signed sum > 2z, i.e. z_den * sum_num > 2 * z_num * common_den
  const BigInt target_big = 2 * numerator(z) * s.common_den;
  BigInt max_abs = 0;
  for (std::int64_t d : s.diff_num) max_abs += d < 0 ? BigInt(-d) : BigInt(d);
  max_abs *= denominator(z);
  if (max_abs > BigInt(std::numeric_limits<std::int64_t>::max() / 4) ||
      target_big > BigInt(std::numeric_limits<std::int64_t>::max() / 4) ||
      -target_big > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw std::invalid_argument("signed tail: threshold too large for the int64 fast path");
  }
  const std::int64_t target = static_cast<std::int64_t>(target_big);
  const std::int64_t scale = static_cast<std::int64_t>(denominator(z));

  std::vector<int> sign(static_cast<std::size_t>(m), 1);
  std::int64_t sum = 0;
  for (std::int64_t d : s.diff_num) sum += d;

  std::uint64_t hits = 0;
  const std::uint64_t total = 1ull << m;
  if (scale * sum > target) ++hits;
  for (std::uint64_t g = 1; g < total; ++g) {
    const int bit = std::countr_zero(g);  // Gray-code walk: one sign flips per step
    const auto idx = static_cast<std::size_t>(bit);
    sum -= 2 * sign[idx] * s.diff_num[idx];
    sign[idx] = -sign[idx];
    if (scale * sum > target) ++hits;
  }
  return Rat(BigInt(hits), BigInt(total));
}

BigInt count_bad_transversals(const std::vector<Rat>& values, const PairingState& pairing,
                              const Rat& threshold) {
  pairing.validate();
  if (static_cast<int>(values.size()) != pairing.point_count()) {
    throw std::invalid_argument("transversal count: values do not match pairing size");
  }
  if (pairing.pair_count() > kSignEnumerationCap) {
    throw std::invalid_argument("transversal count: pair count above the enumeration cap");
  }
  BigInt den = denominator(threshold);
  for (const Rat& v : values) den = boost::multiprecision::lcm(den, denominator(v));
  // selected-half sums as integer numerators over den
  const int m = pairing.pair_count();
  std::vector<std::int64_t> first_num(static_cast<std::size_t>(m));
  std::vector<std::int64_t> second_num(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    const Rat& a = values[static_cast<std::size_t>(pairing.pairs[static_cast<std::size_t>(l)].first)];
    const Rat& b = values[static_cast<std::size_t>(pairing.pairs[static_cast<std::size_t>(l)].second)];
    first_num[static_cast<std::size_t>(l)] =
        static_cast<std::int64_t>(BigInt(numerator(a) * (den / denominator(a))));
    second_num[static_cast<std::size_t>(l)] =
        static_cast<std::int64_t>(BigInt(numerator(b) * (den / denominator(b))));
  }
  const std::int64_t target = static_cast<std::int64_t>(BigInt(numerator(threshold) *
                                                               (den / denominator(threshold))));
  std::vector<int> pick_first(static_cast<std::size_t>(m), 1);
  std::int64_t sum = 0;
  for (std::int64_t v : first_num) sum += v;
  BigInt hits = 0;
  const std::uint64_t total = 1ull << m;
  if (sum >= target) ++hits;
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto idx = static_cast<std::size_t>(std::countr_zero(g));
    if (pick_first[idx] == 1) {
      sum += second_num[idx] - first_num[idx];
      pick_first[idx] = 0;
    } else {
      sum += first_num[idx] - second_num[idx];
      pick_first[idx] = 1;
    }
    if (sum >= target) ++hits;
  }
  return hits;
}

BigInt count_bad_halves(const FunctionTable& table, const Rat& threshold) {
  const int points = table.col_count();
  if (points % 2 != 0 || points > 26) {
    throw std::invalid_argument("count_bad_halves: needs an even point count <= 26");
  }
  const int half = points / 2;

  BigInt den = denominator(threshold);
  for (int r = 0; r < table.row_count(); ++r) {
    for (int c = 0; c < points; ++c) {
      den = boost::multiprecision::lcm(den, denominator(table.at(r, c)));
    }
  }
  const int rows = table.row_count();
  std::vector<std::vector<std::int64_t>> value_num(
      static_cast<std::size_t>(rows), std::vector<std::int64_t>(static_cast<std::size_t>(points)));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < points; ++c) {
      const Rat& v = table.at(r, c);
      value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<std::int64_t>(BigInt(numerator(v) * (den / denominator(v))));
    }
  }
  const std::int64_t target = static_cast<std::int64_t>(BigInt(numerator(threshold) *
                                                               (den / denominator(threshold))));
  // suffix totals overestimate what `need` picks can still add; good enough to prune
  std::vector<std::vector<std::int64_t>> suffix_total(
      static_cast<std::size_t>(rows),
      std::vector<std::int64_t>(static_cast<std::size_t>(points) + 1, 0));
  for (int r = 0; r < rows; ++r) {
    for (int c = points - 1; c >= 0; --c) {
      suffix_total[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          suffix_total[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) + 1] +
          value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  const auto pascal = pascal_triangle(points);
  std::vector<std::int64_t> sums(static_cast<std::size_t>(rows), 0);
  BigInt count = 0;

  auto recurse = [&](auto&& self, int idx, int need) -> void {
    for (int r = 0; r < rows; ++r) {
      if (sums[static_cast<std::size_t>(r)] >= target) {  // values >= 0: every completion stays hit
        count += pascal[static_cast<std::size_t>(points - idx)][static_cast<std::size_t>(need)];
        return;
      }
    }
    if (need == 0) return;  // threshold not reached and nothing left to add
    bool reachable = false;
    for (int r = 0; r < rows && !reachable; ++r) {
      reachable = sums[static_cast<std::size_t>(r)] +
                      suffix_total[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx)] >=
                  target;
    }
    if (!reachable) return;
    if (points - idx < need) return;
    // take idx
    for (int r = 0; r < rows; ++r) {
      sums[static_cast<std::size_t>(r)] +=
          value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx)];
    }
    self(self, idx + 1, need - 1);
    for (int r = 0; r < rows; ++r) {
      sums[static_cast<std::size_t>(r)] -=
          value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx)];
    }
    // skip idx
    self(self, idx + 1, need);
  };
  recurse(recurse, 0, half);
  return count;
}

CountingFactor counting_factor(std::int64_t points, long power) {
  if (points < 1 || power < 0 || power > points) {
    throw std::invalid_argument("counting_factor: needs 0 <= power <= points");
  }
  CountingFactor out;
  out.binomial_form = pow_rational(Rat(points), power) *
                      Rat(binomial(2 * points, points), binomial(2 * points - power, points - power));
  Rat product = 1;
  for (long i = 1; i <= power - 1; ++i) {
    product *= 1 + Rat(i, 2 * (points - i));
  }
  out.product_form = pow_rational(Rat(2 * points), power) * product;
  if (out.binomial_form != out.product_form) {
    throw std::logic_error("counting_factor: closed forms disagree");
  }
  return out;
}

namespace {

Ival log_of_rational(const Rat& value) { return log_ival(ival_from_rational(value)); }

Ival pow2_ival(const Ival& exponent) {
  return exp_ival(mul(log_ival({2.0, 2.0}), exponent));
}

ChainRow make_row(std::string step, const Ival& lhs, const Ival& rhs) {
  ChainRow row;
  row.step = std::move(step);
  row.lhs_log = lhs.hi;
  row.rhs_log = rhs.lo;
  row.holds = certify_le(lhs, rhs);
  row.log_margin = rhs.lo - lhs.hi;
  return row;
}

}  // namespace

std::vector<ChainRow> chain_report(const Rat& mean_cap, const BigInt& base_points, int level,
                                   long power, const Rat& density_param,
                                   const Rat& density_exponent) {
  if (power < 0) throw std::invalid_argument("chain_report: power must be >= 0");
  const HalvingSchedule schedule = build_schedule(mean_cap, base_points, level + 1);
  const HalvingLevel& lvl = schedule.levels[static_cast<std::size_t>(level)];
  const HalvingLevel& nxt = schedule.levels[static_cast<std::size_t>(level) + 1];
  if (power > lvl.points) throw std::invalid_argument("chain_report: power exceeds point count");

  const Ival lr = log_of_rational(mean_cap);
  const Ival lrk1 = log_ival(nxt.mean_cap);
  const Ival l_correction = log_of_rational(lvl.correction);
  const Ival l_correction_next = log_of_rational(nxt.correction);
  const Ival l_density = log_of_rational(density_param);
  const Ival exponent_iv = ival_from_rational(density_exponent);
  const Ival ln2 = log_ival({2.0, 2.0});
  const Ival k_iv = exact_ival(static_cast<double>(level));
  const Ival n0_iv = ival_from_rational(Rat(base_points));
  const Ival nk_iv = ival_from_rational(Rat(lvl.points));
  const Ival log_choose =
      log_binomial_ival(ival_from_rational(Rat(2 * lvl.points)), nk_iv);
  const Ival log_nk = log_ival(nk_iv);
  const Ival log_nk1 = log_of_rational(Rat(nxt.points));
  const Ival p_iv = exact_ival(static_cast<double>(power));

  std::vector<ChainRow> rows;

  {
    ChainRow row;
    row.step = "window_low";
    row.boolean_only = true;
    row.holds = schedule.window_low_ok ? IvalOrder::True : IvalOrder::False;
    rows.push_back(row);
    row.step = "window_high";
    row.holds = schedule.window_high_ok ? IvalOrder::True : IvalOrder::False;
    rows.push_back(row);
    row.step = "next_cap_at_least_half";
    row.holds = nxt.at_least_half_base;
    rows.push_back(row);
  }

  // count bound on bad halves vs its absorbed form
  const Ival stmt_a_exponent =
      mul(mul(div(exact_ival(1.0), exact_ival(100.0)), pow2_ival(div(k_iv, exact_ival(20.0)))),
          exp_ival(mul(lr, div(exact_ival(-1.0), exact_ival(20.0)))));
  {
    const Ival level_term =
        mul(exponent_iv,
            add(sub(mul(div(k_iv, exact_ival(8.0)), ln2), lrk1),
                mul(exact_ival(0.125), log_ival(n0_iv))));
    const Ival decay = mul(mul(exact_ival(0.5), pow2_ival(mul(div(exact_ival(3.0), exact_ival(4.0)), k_iv))),
                           mul(pow_ival(n0_iv, exact_ival(0.75)), nxt.mean_cap));
    const Ival lhs = add(add(log_choose, l_density), sub(level_term, decay));
    const Ival rhs = sub(add(log_choose, l_density), stmt_a_exponent);
    rows.push_back(make_row("halved_count_le_stmt_a", lhs, rhs));
  }

  // overcount factor vs its exponential estimate
  Ival ratio_log;
  if (lvl.points <= 60) {
    ratio_log = log_of_rational(
        counting_factor(static_cast<std::int64_t>(lvl.points), power).binomial_form);
  } else {
    const Ival reduced_n = ival_from_rational(Rat(2 * lvl.points - power));
    const Ival reduced_k = ival_from_rational(Rat(lvl.points - power));
    ratio_log = add(mul(p_iv, log_nk), sub(log_choose, log_binomial_ival(reduced_n, reduced_k)));
  }
  // p^2 / (2^(k+1) N0); the denominator is exactly the next level's point count
  const Rat p2_term_exact = Rat(power * power) / Rat(nxt.points);
  const Ival p2_term = ival_from_rational(p2_term_exact);
  {
    const Ival rhs = add(mul(p_iv, log_nk1), p2_term);
    rows.push_back(make_row("overcount_le_growth", ratio_log, rhs));
  }
  {
    const Ival cap43 = mul(pow2_ival(exact_ival(-static_cast<double>(level + 1))),
                           exp_ival(mul(lr, div(exact_ival(4.0), exact_ival(3.0)))));
    rows.push_back(make_row("growth_exponent_le_cap43", p2_term, cap43));
  }
  {
    const Rat linear_term = Rat(1, 3) * Rat(1, BigInt(1) << (level + 1)) * mean_cap;
    const Ival lhs = mul(pow2_ival(exact_ival(-static_cast<double>(level + 1))),
                         exp_ival(mul(lr, div(exact_ival(4.0), exact_ival(3.0)))));
    const Ival rhs = log1p_ival(ival_from_rational(linear_term));
    rows.push_back(make_row("growth_le_linear_correction", lhs, rhs));
  }
  {
    const Rat linear_term = Rat(1, 3) * Rat(1, BigInt(1) << (level + 1)) * mean_cap;
    const Ival rhs = add(l_correction,
                         add(mul(div(p_iv, exact_ival(4.0)), lr), log_of_rational(linear_term)));
    rows.push_back(make_row("stmt_a_absorbed_by_correction", neg(stmt_a_exponent), rhs));
  }
  {
    // assembled induction step (density parameter cancels)
    const Ival surviving = mul(ival_from_rational(lvl.correction),
                               exp_ival(mul(div(p_iv, exact_ival(4.0)), lr)));
    const Ival spilled = exp_ival(neg(stmt_a_exponent));
    const Ival inner = add(surviving, spilled);
    ChainRow row;
    if (inner.lo > 0.0) {
      const Ival lhs = add(ratio_log, log_ival(inner));
      const Ival rhs = add(l_correction_next,
                           add(mul(div(p_iv, exact_ival(4.0)), lr), mul(p_iv, log_nk1)));
      row = make_row("induction_step", lhs, rhs);
    } else {
      row.step = "induction_step";
      row.holds = IvalOrder::Unknown;
    }
    rows.push_back(row);
  }
  {
    // the level's claimed count bound, as a value row
    const Ival value = add(add(l_correction, l_density),
                           add(mul(p_iv, log_nk), mul(div(p_iv, exact_ival(4.0)), lr)));
    ChainRow row;
    row.step = "level_count_bound_log";
    row.lhs_log = value.hi;
    row.rhs_log = value.lo;
    row.holds = IvalOrder::Unknown;
    row.log_margin = 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace suptail
