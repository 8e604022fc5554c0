#pragma once

#include <cstdint>
#include <string_view>

#include "gibbslab/logcomb.hpp"

namespace gibbslab {

enum class CountingConvention { Distinguishable, CorrectedBoltzmann, Bose, Fermi };

std::string_view to_string(CountingConvention c);
/// Accepts "distinguishable", "corrected-boltzmann", "bose", "fermi".
CountingConvention parse_counting_convention(std::string_view s);

/// N particles over X one-particle states.
struct StateSpaceSpec {
  std::int64_t n = 0;
  std::int64_t x = 1;
};

/// ln W: X^N, X^N/N!, C(N+X-1, N) or C(X, N). Fermi with N > X throws
/// InfeasibleStateError.
LogQuantity ln_microstate_count(StateSpaceSpec spec, CountingConvention conv);

/// ln W(conv) - ln W(CorrectedBoltzmann) for conv in {Bose, Fermi}; -> 0 as X/N grows.
double dilute_limit_deviation(StateSpaceSpec spec, CountingConvention conv);

/// W^2 (2N)!/(N! N!): both halves' microstates times the ways to split 2N
/// labelled particles evenly after the partition is gone.
LogQuantity combined_count_after_removal(LogQuantity w_single, std::int64_t n);

inline double entropy_from_count(LogQuantity w) { return w.ln_value(); }
inline double entropy_difference(LogQuantity w2, LogQuantity w1) {
  return w2.ln_value() - w1.ln_value();
}

}  // namespace gibbslab
