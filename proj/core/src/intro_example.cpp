#include "suptail/intro_example.hpp"

#include <stdexcept>

#include "suptail/bounds.hpp"
#include "suptail/combinatorics.hpp"

namespace suptail {

namespace {

/// P(at most max_size distinct values among n draws): the number of
/// sequences using exactly i distinct values is C(N, i) * i! * S(n, i).
Rat distinct_tail(int point_count, int max_size, long n) {
  BigInt favorable = 0;
  const long top = std::min<long>(max_size, n);
  for (long i = n == 0 ? 0 : 1; i <= top; ++i) {
    favorable += binomial(point_count, i) * factorial(i) * stirling2(n, i);
  }
  if (n == 0) favorable = 1;
  return Rat(favorable, boost::multiprecision::pow(BigInt(point_count),
                                                   static_cast<unsigned>(n)));
}

}  // namespace

TailResult intro_example_Pn(int point_count, int max_size, long sample_size) {
  if (max_size < 1 || point_count < max_size) {
    throw std::invalid_argument("intro_example_Pn: need point_count >= max_size >= 1");
  }
  if (sample_size < 0) throw std::invalid_argument("intro_example_Pn: negative sample size");

  TailResult result;
  result.method = TailMethod::ClosedForm;
  result.probability = distinct_tail(point_count, max_size, sample_size);

  const Rat density(max_size, point_count);  // L/N, the achieved sup of means
  const Rat union_bound = Rat(binomial(point_count, max_size)) *
                          pow_rational(density, sample_size);
  const Rat factorial_bound =
      pow_rational(Rat(4), max_size) * pow_rational(density, sample_size - max_size);

  result.bounds.push_back(compare_rational_bound("union", result.probability, union_bound));
  result.bounds.push_back(
      compare_rational_bound("factorial", result.probability, factorial_bound));
  return result;
}

PunBounds intro_example_Pun_bound(int point_count, int max_size, long sample_size,
                                  long threshold) {
  if (threshold < 0 || threshold > sample_size) {
    throw std::invalid_argument("intro_example_Pun_bound: need 0 <= threshold <= sample_size");
  }
  PunBounds out;
  const Rat p_u = distinct_tail(point_count, max_size, threshold);
  out.select_bound = Rat(binomial(sample_size, threshold)) * p_u;
  const Rat density(max_size, point_count);
  out.closed_bound = pow_rational(Rat(4), max_size) *
                     pow_rational(Rat(sample_size), threshold) *
                     pow_rational(density, threshold - max_size);

  // Exact tail of the explicit class, when enumerable: the occupancy DP has
  // point_count atoms (the class separates every pair of points).
  const BigInt states = binomial(sample_size + point_count - 1, point_count - 1);
  const BigInt rows = subset_class_info(point_count, max_size).row_count;
  if (states <= 100000 && rows <= 2000) {
    const FunctionTable table = subset_indicator_class(point_count, max_size);
    const FiniteSpace space = FiniteSpace::uniform(point_count);
    out.exact_tail =
        exact_sup_tail(table, space, sample_size, Rat(threshold), /*strict=*/false).probability;
  }
  return out;
}

}  // namespace suptail
