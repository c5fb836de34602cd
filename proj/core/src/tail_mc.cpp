#include "suptail/tail_mc.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <stdexcept>
#include <thread>
#include <vector>

#include "suptail/rng.hpp"
#include "suptail/tail_exact.hpp"

namespace suptail {

std::pair<double, double> clopper_pearson_99(std::uint64_t hits, std::uint64_t samples) {
  if (samples == 0 || hits > samples) {
    throw std::invalid_argument("clopper_pearson_99: bad hit/sample counts");
  }
  using dist = boost::math::binomial_distribution<double>;
  const double n = static_cast<double>(samples);
  const double k = static_cast<double>(hits);
  const double alpha_each_side = 0.005;
  const double low = dist::find_lower_bound_on_p(n, k, alpha_each_side);
  const double high = dist::find_upper_bound_on_p(n, k, alpha_each_side);
  return {low, high};
}

namespace {

/// Per-point row values as int64 numerators over a common denominator, with
/// the threshold comparison prescaled, so the per-sample hit test is exact.
struct HitTester {
  std::vector<std::vector<std::int64_t>> value_num;  // [row][point]
  std::int64_t scale = 1;   // threshold denominator
  std::int64_t target = 0;  // threshold numerator * value common denominator
  bool strict = false;

  bool hit(const std::vector<std::int64_t>& row_sums) const {
    for (std::int64_t s : row_sums) {
      const std::int64_t lhs = scale * s;
      if (strict ? lhs > target : lhs >= target) return true;
    }
    return false;
  }
};

HitTester make_tester(const FunctionTable& table, long sample_size, const Rat& threshold,
                      bool strict) {
  BigInt value_den = 1;
  for (int r = 0; r < table.row_count(); ++r) {
    for (int c = 0; c < table.col_count(); ++c) {
      value_den = boost::multiprecision::lcm(value_den, denominator(table.at(r, c)));
    }
  }
  // overflow guard: scale * n * max numerator and target must fit in int64
  const BigInt max_sum = value_den * sample_size * denominator(threshold);
  const BigInt target_big = numerator(threshold) * value_den;
  if (max_sum > BigInt(std::numeric_limits<std::int64_t>::max() / 2) ||
      target_big > BigInt(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw std::invalid_argument("mc_sup_tail: value denominators too large for the int64 fast path");
  }
  HitTester t;
  t.strict = strict;
  t.scale = static_cast<std::int64_t>(denominator(threshold));
  t.target = static_cast<std::int64_t>(target_big);
  t.value_num.assign(static_cast<std::size_t>(table.row_count()), {});
  for (int r = 0; r < table.row_count(); ++r) {
    auto& row = t.value_num[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(table.col_count()));
    for (int c = 0; c < table.col_count(); ++c) {
      const Rat& v = table.at(r, c);
      row.push_back(static_cast<std::int64_t>(BigInt(numerator(v) * (value_den / denominator(v)))));
    }
  }
  return t;
}

std::uint64_t run_range(const HitTester& tester, const PointSampler& sampler, long sample_size,
                        std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  const std::size_t rows = tester.value_num.size();
  std::vector<std::int64_t> sums(rows);
  std::uint64_t hits = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    SampleStream stream(seed, i);
    std::fill(sums.begin(), sums.end(), 0);
    for (long d = 0; d < sample_size; ++d) {
      const int point = sampler.draw(stream);
      for (std::size_t r = 0; r < rows; ++r) {
        sums[r] += tester.value_num[r][static_cast<std::size_t>(point)];
      }
    }
    if (tester.hit(sums)) ++hits;
  }
  return hits;
}

}  // namespace

McEstimate mc_sup_tail(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                       const Rat& threshold, bool strict, const McConfig& config) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("mc_sup_tail: table columns do not match space points");
  }
  if (sample_size < 1) throw std::invalid_argument("mc_sup_tail: sample_size must be >= 1");
  if (config.sample_count < 1) throw std::invalid_argument("mc_sup_tail: need >= 1 sample");
  if (config.worker_count < 1) throw std::invalid_argument("mc_sup_tail: need >= 1 worker");

  const HitTester tester = make_tester(table, sample_size, threshold, strict);
  const PointSampler sampler(space.weights());

  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(config.worker_count), config.sample_count));
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  const std::uint64_t chunk = config.sample_count / workers;
  const std::uint64_t rest = config.sample_count % workers;
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < rest ? 1 : 0);
    threads.emplace_back([&, w, begin, end] {
      partial[static_cast<std::size_t>(w)] =
          run_range(tester, sampler, sample_size, config.seed, begin, end);
    });
    begin = end;
  }
  for (auto& t : threads) t.join();

  McEstimate est;
  est.sample_count = config.sample_count;
  for (std::uint64_t h : partial) est.hit_count += h;
  est.estimate = static_cast<double>(est.hit_count) / static_cast<double>(est.sample_count);
  const auto [low, high] = clopper_pearson_99(est.hit_count, est.sample_count);
  est.ci_low = low;
  est.ci_high = high;
  return est;
}

McCrossCheck mc_vs_exact(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                         const Rat& threshold, bool strict, const McConfig& config) {
  McCrossCheck out;
  out.mc = mc_sup_tail(table, space, sample_size, threshold, strict, config);
  try {
    out.exact = exact_sup_tail(table, space, sample_size, threshold, strict).probability;
    out.exact_available = true;
  } catch (const std::invalid_argument& err) {
    out.note = err.what();
    return out;
  }
  out.exact_inside_ci = rational_from_double(out.mc.ci_low) <= out.exact &&
                        out.exact <= rational_from_double(out.mc.ci_high);
  return out;
}

}  // namespace suptail
