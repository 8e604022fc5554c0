#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "gibbslab/errors.hpp"

namespace gibbslab {

/// A positive quantity (count, probability, ratio) held as its natural log.
/// Products map to sums of logs, so N! at N ~ 1e6 never overflows.
template <typename Scalar>
class BasicLogQuantity {
 public:
  constexpr BasicLogQuantity() = default;
  constexpr explicit BasicLogQuantity(Scalar ln_value) : ln_value_(ln_value) {}

  static BasicLogQuantity from_value(Scalar x) {
    if (!(x > Scalar(0))) throw DomainError("LogQuantity requires a positive value");
    return BasicLogQuantity(std::log(x));
  }
  static constexpr BasicLogQuantity one() { return BasicLogQuantity(Scalar(0)); }

  constexpr Scalar ln_value() const { return ln_value_; }
  Scalar value() const { return std::exp(ln_value_); }

  constexpr BasicLogQuantity pow(Scalar exponent) const {
    return BasicLogQuantity(exponent * ln_value_);
  }

  friend constexpr BasicLogQuantity operator*(BasicLogQuantity a, BasicLogQuantity b) {
    return BasicLogQuantity(a.ln_value_ + b.ln_value_);
  }
  friend constexpr BasicLogQuantity operator/(BasicLogQuantity a, BasicLogQuantity b) {
    return BasicLogQuantity(a.ln_value_ - b.ln_value_);
  }
  constexpr BasicLogQuantity& operator*=(BasicLogQuantity o) {
    ln_value_ += o.ln_value_;
    return *this;
  }
  constexpr BasicLogQuantity& operator/=(BasicLogQuantity o) {
    ln_value_ -= o.ln_value_;
    return *this;
  }
  friend constexpr bool operator==(BasicLogQuantity, BasicLogQuantity) = default;
  friend constexpr auto operator<=>(BasicLogQuantity a, BasicLogQuantity b) {
    return a.ln_value_ <=> b.ln_value_;
  }

 private:
  Scalar ln_value_ = Scalar(0);
};

using LogQuantity = BasicLogQuantity<double>;

/// Largest n served from the cumulative ln-table; above it the Stirling
/// series (through 1/(360 n^3)) is used.
inline constexpr std::int64_t kLnFactorialTableLimit = 1'000'000;

/// ln(n!). Table lookup (compensated cumulative sum of ln k, built once on
/// first use, thread-safe) for n <= kLnFactorialTableLimit, Stirling series above.
double ln_factorial(std::int64_t n);

/// ln C(n, k). Always ln n! - (ln k! + ln (n-k)!), so the result is
/// bit-identical under k <-> n-k.
double ln_binomial(std::int64_t n, std::int64_t k);

/// ln( n! / prod parts_i! ); requires sum(parts) == n.
double ln_multinomial(std::int64_t n, std::span<const std::int64_t> parts);

/// Leading Stirling form n ln n - n + ½ ln(2πn); within 1/(12n) of ln n!.
double stirling_ln_factorial(std::int64_t n);

}  // namespace gibbslab
