#include "suptail/dyadic.hpp"

#include <stdexcept>

#include "suptail/bounds.hpp"
#include "suptail/rng.hpp"
#include "suptail/rounding.hpp"

namespace suptail {

DyadicDecomposition dyadic_truncate(const FunctionTable& table, long sample_size) {
  if (sample_size < 2) throw std::invalid_argument("dyadic_truncate: sample size must be >= 2");
  int levels = 1;
  while ((1L << levels) <= sample_size) ++levels;  // smallest R with 2^R > n; then 2^R <= 2n
  DyadicDecomposition out{sample_size, levels, table, {}, {}};
  for (int j = 1; j <= levels; ++j) {
    const Rat cap(1, BigInt(1) << j);
    std::vector<std::vector<Rat>> capped_rows(static_cast<std::size_t>(table.row_count()));
    std::vector<std::vector<Rat>> scaled_rows(static_cast<std::size_t>(table.row_count()));
    for (int r = 0; r < table.row_count(); ++r) {
      auto& crow = capped_rows[static_cast<std::size_t>(r)];
      auto& srow = scaled_rows[static_cast<std::size_t>(r)];
      crow.reserve(static_cast<std::size_t>(table.col_count()));
      srow.reserve(static_cast<std::size_t>(table.col_count()));
      for (int c = 0; c < table.col_count(); ++c) {
        const Rat capped = std::min(cap, table.at(r, c));
        crow.push_back(capped);
        srow.push_back(capped * (BigInt(1) << j));
      }
    }
    out.capped.emplace_back(std::move(capped_rows));
    out.scaled.emplace_back(std::move(scaled_rows));
  }
  return out;
}

std::vector<long> level_counts(const DyadicDecomposition& decomposition, int row,
                               const std::vector<int>& sample_points) {
  if (row < 0 || row >= decomposition.base.row_count()) {
    throw std::invalid_argument("level_counts: bad row");
  }
  std::vector<long> counts(static_cast<std::size_t>(decomposition.level_count), 0);
  for (int j = 1; j <= decomposition.level_count; ++j) {
    const Rat level_value(1, BigInt(1) << j);
    long hits = 0;
    for (int point : sample_points) {
      if (decomposition.base.at(row, point) >= level_value) ++hits;
    }
    counts[static_cast<std::size_t>(j - 1)] = hits;
  }
  return counts;
}

DominationReport domination_check(const FunctionTable& table, const FiniteSpace& space,
                                  long sample_size, long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("domination_check: need >= 1 trial");
  const DyadicDecomposition decomposition = dyadic_truncate(table, sample_size);
  const PointSampler sampler(space.weights());

  DominationReport report;
  report.trials = trials;
  for (long t = 0; t < trials; ++t) {
    SampleStream stream(seed, static_cast<std::uint64_t>(t));
    const int row = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(table.row_count())));
    std::vector<int> sample(static_cast<std::size_t>(sample_size));
    for (auto& point : sample) point = sampler.draw(stream);

    Rat partial_sum = 0;
    for (int point : sample) partial_sum += table.at(row, point);
    const auto counts = level_counts(decomposition, row, sample);
    Rat dominating = 1;
    for (int j = 1; j <= decomposition.level_count; ++j) {
      dominating += Rat(counts[static_cast<std::size_t>(j - 1)]) * pow_rational(Rat(2), 1 - j);
    }
    const Rat slack = dominating - partial_sum;
    if (slack < 0) ++report.violations;
    if (t == 0 || slack < report.min_slack) report.min_slack = slack;
    if (t == 0 || slack > report.max_slack) report.max_slack = slack;
  }
  return report;
}

namespace {

/// Exact sign of (threshold - alpha - beta * sqrt(2)) for rationals.
int compare_to_quadratic(const Rat& value, const Rat& alpha, const Rat& beta) {
  // sign of s = (value - alpha) - beta * sqrt(2)
  const Rat a = value - alpha;
  if (beta == 0) return a > 0 ? 1 : a < 0 ? -1 : 0;
  if (beta > 0) {
    if (a <= 0) return -1;  // positive beta sqrt term dominates a non-positive a
    // a > 0: s > 0 iff a^2 > 2 beta^2
    const Rat diff = a * a - 2 * beta * beta;
    return diff > 0 ? 1 : diff < 0 ? -1 : 0;
  }
  if (a >= 0) return 1;
  const Rat diff = a * a - 2 * beta * beta;
  return diff > 0 ? -1 : diff < 0 ? 1 : 0;
}

}  // namespace

long hit_threshold(const Rat& threshold, int level) {
  if (threshold < 1 || level < 1) {
    throw std::invalid_argument("hit_threshold: needs threshold >= 1 and level >= 1");
  }
  // value = (sqrt(2)-1)/2 * (threshold-1) * 2^(level/2), written alpha + beta*sqrt(2)
  const Rat u1 = threshold - 1;
  Rat alpha;
  Rat beta;
  if (level % 2 == 0) {
    const Rat half_pow = u1 * pow_rational(Rat(2), level / 2 - 1);  // (u-1) 2^(j/2) / 2
    alpha = -half_pow;
    beta = half_pow;
  } else {
    const Rat e = u1 * pow_rational(Rat(2), (level - 1) / 2);  // (u-1) 2^((j-1)/2)
    alpha = e;
    beta = -e / 2;
  }
  // interval estimate first
  const Ival sqrt2 = sqrt_ival({2.0, 2.0});
  const Ival value = add(mul(ival_from_rational(alpha), {1.0, 1.0}),
                         mul(ival_from_rational(beta), sqrt2));
  double floor_lo = std::floor(value.lo);
  double floor_hi = std::floor(value.hi);
  long candidate = static_cast<long>(floor_lo);
  if (floor_lo != floor_hi) {
    // straddles an integer: settle exactly (value is irrational unless u == 1)
    while (compare_to_quadratic(Rat(candidate + 1), alpha, beta) <= 0) ++candidate;
  }
  return candidate + 1;
}

LevelTail level_event_measure(const FunctionTable& table, const FiniteSpace& space,
                              long sample_size, const Rat& threshold, int level,
                              const Rat& density_param, long density_exponent) {
  LevelTail out;
  out.level = level;
  out.hits_needed = hit_threshold(threshold, level);

  if (out.hits_needed > sample_size) {
    out.measure = 0;
  } else {
    const Rat level_value(1, BigInt(1) << level);
    std::vector<std::vector<Rat>> indicator_rows;
    indicator_rows.reserve(static_cast<std::size_t>(table.row_count()));
    for (int r = 0; r < table.row_count(); ++r) {
      std::vector<Rat> row(static_cast<std::size_t>(table.col_count()));
      for (int c = 0; c < table.col_count(); ++c) {
        row[static_cast<std::size_t>(c)] = table.at(r, c) >= level_value ? 1 : 0;
      }
      indicator_rows.push_back(std::move(row));
    }
    out.measure = exact_sup_tail(FunctionTable(std::move(indicator_rows)), space, sample_size,
                                 Rat(out.hits_needed), /*strict=*/false)
                      .probability;
  }

  // closed-form bound pieces on the level event, all exact comparisons
  const Rat rho = sup_mean(table, space);
  const long t = out.hits_needed;
  if (rho > 0) {
    const Rat level_cap = pow_rational(Rat(2), level + 1) * rho;  // cap for the rescaled level class
    out.bounds.push_back(compare_power_bound(
        "levelwise",
        out.measure,
        2 * density_param * pow_rational(Rat(sample_size), t) *
            pow_rational(Rat(2), level * density_exponent),
        level_cap, t, 4));
    out.bounds.push_back(compare_power_bound("collapsed", out.measure, 2 * density_param,
                                             8 * pow_rational(Rat(sample_size), 5) * rho, t, 4));
    out.bounds.push_back(compare_power_bound("plain_power", out.measure, 2 * density_param, rho,
                                             t, 5));
    const BigInt exp_num = BigInt(level) * numerator(threshold);
    const BigInt exp_den = BigInt(25) * denominator(threshold);
    if (exp_num <= BigInt(1) << 30 && exp_den <= BigInt(1) << 30) {
      out.bounds.push_back(compare_power_bound("per_level_target", out.measure, density_param,
                                               rho, static_cast<long>(exp_num),
                                               static_cast<long>(exp_den)));
    }
  }
  return out;
}

SubadditivityReport subadditivity_check(const FunctionTable& table, const FiniteSpace& space,
                                        long sample_size, const Rat& threshold,
                                        const Rat& density_param, long density_exponent) {
  SubadditivityReport report;
  report.whole_tail =
      exact_sup_tail(table, space, sample_size, threshold, /*strict=*/true).probability;
  const DyadicDecomposition decomposition = dyadic_truncate(table, sample_size);
  report.level_sum = 0;
  for (int j = 1; j <= decomposition.level_count; ++j) {
    report.levels.push_back(level_event_measure(table, space, sample_size, threshold, j,
                                                density_param, density_exponent));
    report.level_sum += report.levels.back().measure;
  }
  report.holds = report.whole_tail <= report.level_sum;
  return report;
}

}  // namespace suptail
