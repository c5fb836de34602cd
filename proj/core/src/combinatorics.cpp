#include "suptail/combinatorics.hpp"

#include <stdexcept>

namespace suptail {

BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) at each step
  }
  return result;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt result = 1;
  for (long i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt stirling2(long n, long k) {
  if (n < 0 || k < 0) return 0;
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0 || k > n) return 0;
  // S(n, k) = k*S(n-1, k) + S(n-1, k-1)
  std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // row for n = 0
  for (long i = 1; i <= n; ++i) {
    for (long j = std::min<long>(i, k); j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[k];
}

std::vector<std::vector<BigInt>> pascal_triangle(int n) {
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    rows[i].resize(static_cast<std::size_t>(i) + 1);
    rows[i][0] = 1;
    rows[i][i] = 1;
    for (int j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

}  // namespace suptail
