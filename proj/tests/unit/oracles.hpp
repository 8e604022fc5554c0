#pragma once
// Reference computations for the tests. Deliberately naive: direct summation,
// Pascal's triangle, brute-force enumeration. Nothing here calls the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// ln n! by straight summation in long double.
inline long double ln_factorial(std::int64_t n) {
  long double s = 0.0L;
  for (std::int64_t k = 2; k <= n; ++k) s += std::log(static_cast<long double>(k));
  return s;
}

inline long double ln_binomial(std::int64_t n, std::int64_t k) {
  return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

// Exact binomials from Pascal's triangle (rows up to `rows`).
inline std::vector<std::vector<std::uint64_t>> pascal(int rows) {
  std::vector<std::vector<std::uint64_t>> t(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

// Labelled assignments of n particles to x modes, visited one by one.
inline std::int64_t count_labelled(int n, int x) {
  std::int64_t c = 0;
  std::vector<int> a(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      ++c;
      return;
    }
    for (int m = 0; m < x; ++m) {
      a[i] = m;
      rec(i + 1);
    }
  };
  rec(0);
  return c;
}

// Occupation vectors with sum n and per-mode cap (cap < 0: unbounded).
inline std::int64_t count_occupations(int n, int x, int cap) {
  std::function<std::int64_t(int, int)> rec = [&](int mode, int left) -> std::int64_t {
    if (mode == x) return left == 0 ? 1 : 0;
    std::int64_t c = 0;
    const int top = cap < 0 ? left : std::min(left, cap);
    for (int k = 0; k <= top; ++k) c += rec(mode + 1, left - k);
    return c;
  };
  return rec(0, n);
}

}  // namespace oracle
