#pragma once

#include <vector>

#include "suptail/rational.hpp"

namespace suptail {

/// C(n, k), exact; 0 when k < 0 or k > n.
BigInt binomial(long n, long k);

BigInt factorial(long n);

/// Stirling numbers of the second kind S(n, k): partitions of an n-set into
/// k nonempty blocks. S(0, 0) == 1.
BigInt stirling2(long n, long k);

/// Rows 0..n of Pascal's triangle; row[i][j] == C(i, j).
std::vector<std::vector<BigInt>> pascal_triangle(int n);

}  // namespace suptail
