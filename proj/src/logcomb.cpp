#include "gibbslab/logcomb.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace gibbslab {

namespace {

// Built once by the first caller (function-local static init is thread-safe);
// read-only afterwards.
const std::vector<double>& ln_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(static_cast<std::size_t>(kLnFactorialTableLimit) + 1, 0.0);
    // Neumaier summation: plain accumulation drifts by ~1e-6 at n = 1e6.
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t k = 2; k <= kLnFactorialTableLimit; ++k) {
      const double term = std::log(static_cast<double>(k));
      const double next = sum + term;
      if (std::abs(sum) >= std::abs(term))
        comp += (sum - next) + term;
      else
        comp += (term - next) + sum;
      sum = next;
      t[static_cast<std::size_t>(k)] = sum + comp;
    }
    return t;
  }();
  return table;
}

double stirling_series(double n) {
  const double inv = 1.0 / n;
  const double inv3 = inv * inv * inv;
  return n * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi * n) + inv / 12.0 -
         inv3 / 360.0;
}

}  // namespace

double ln_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("ln_factorial: n must be nonnegative, got " + std::to_string(n));
  if (n <= kLnFactorialTableLimit) return ln_factorial_table()[static_cast<std::size_t>(n)];
  return stirling_series(static_cast<double>(n));
}

double ln_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    throw DomainError("ln_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  return ln_factorial(n) - (ln_factorial(k) + ln_factorial(n - k));
}

double ln_multinomial(std::int64_t n, std::span<const std::int64_t> parts) {
  if (n < 0) throw DomainError("ln_multinomial: n must be nonnegative");
  std::int64_t total = 0;
  double denominator = 0.0;
  for (std::int64_t p : parts) {
    if (p < 0) throw DomainError("ln_multinomial: negative part");
    total += p;
    denominator += ln_factorial(p);
  }
  if (total != n)
    throw DomainError("ln_multinomial: parts sum to " + std::to_string(total) + ", expected " +
                      std::to_string(n));
  return ln_factorial(n) - denominator;
}

double stirling_ln_factorial(std::int64_t n) {
  if (n < 1) throw DomainError("stirling_ln_factorial: n must be >= 1");
  const double x = static_cast<double>(n);
  return x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x);
}

}  // namespace gibbslab
