#include "gibbslab/counting.hpp"

#include <cmath>
#include <string>

namespace gibbslab {

std::string_view to_string(CountingConvention c) {
  switch (c) {
    case CountingConvention::Distinguishable: return "distinguishable";
    case CountingConvention::CorrectedBoltzmann: return "corrected-boltzmann";
    case CountingConvention::Bose: return "bose";
    case CountingConvention::Fermi: return "fermi";
  }
  return "?";
}

CountingConvention parse_counting_convention(std::string_view s) {
  if (s == "distinguishable") return CountingConvention::Distinguishable;
  if (s == "corrected-boltzmann" || s == "corrected") return CountingConvention::CorrectedBoltzmann;
  if (s == "bose") return CountingConvention::Bose;
  if (s == "fermi") return CountingConvention::Fermi;
  throw DomainError("unknown counting convention '" + std::string(s) + "'");
}

LogQuantity ln_microstate_count(StateSpaceSpec spec, CountingConvention conv) {
  if (spec.n < 0) throw DomainError("state space: N must be >= 0");
  if (spec.x < 1) throw DomainError("state space: X must be >= 1");
  const double n = static_cast<double>(spec.n);
  const double ln_x = std::log(static_cast<double>(spec.x));
  switch (conv) {
    case CountingConvention::Distinguishable:
      return LogQuantity(spec.n == 0 ? 0.0 : n * ln_x);
    case CountingConvention::CorrectedBoltzmann:
      return LogQuantity((spec.n == 0 ? 0.0 : n * ln_x) - ln_factorial(spec.n));
    case CountingConvention::Bose:
      return LogQuantity(ln_binomial(spec.n + spec.x - 1, spec.n));
    case CountingConvention::Fermi:
      if (spec.n > spec.x)
        throw InfeasibleStateError("Fermi counting: N=" + std::to_string(spec.n) +
                                   " exceeds X=" + std::to_string(spec.x));
      return LogQuantity(ln_binomial(spec.x, spec.n));
  }
  throw DomainError("unknown counting convention");
}

double dilute_limit_deviation(StateSpaceSpec spec, CountingConvention conv) {
  if (conv != CountingConvention::Bose && conv != CountingConvention::Fermi)
    throw DomainError("dilute_limit_deviation: convention must be bose or fermi");
  if (spec.n < 1) throw DomainError("dilute_limit_deviation: N must be >= 1");
  // One particle has X states under every convention.
  if (spec.n == 1) return 0.0;
  return ln_microstate_count(spec, conv).ln_value() -
         ln_microstate_count(spec, CountingConvention::CorrectedBoltzmann).ln_value();
}

LogQuantity combined_count_after_removal(LogQuantity w_single, std::int64_t n) {
  if (n < 0) throw DomainError("combined_count_after_removal: N must be >= 0");
  return w_single.pow(2.0) * LogQuantity(ln_binomial(2 * n, n));
}

}  // namespace gibbslab
