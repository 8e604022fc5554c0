#include "gibbslab/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gibbslab/errors.hpp"

namespace gibbslab {

std::string_view to_string(DiscriminationPolicy p) {
  switch (p) {
    case DiscriminationPolicy::BySpecies: return "by-species";
    case DiscriminationPolicy::ByOrigin: return "by-origin";
    case DiscriminationPolicy::None: return "none";
  }
  return "?";
}

DiscriminationPolicy parse_discrimination_policy(std::string_view s) {
  if (s == "by-species") return DiscriminationPolicy::BySpecies;
  if (s == "by-origin") return DiscriminationPolicy::ByOrigin;
  if (s == "none") return DiscriminationPolicy::None;
  throw DomainError("unknown discrimination policy '" + std::string(s) + "'");
}

namespace {

std::int64_t states_for(double states_per_volume, double volume) {
  return std::max<std::int64_t>(1, std::llround(states_per_volume * volume));
}

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-300});
}

double n_ln(std::int64_t n, std::int64_t x) {
  return n == 0 ? 0.0 : static_cast<double>(n) * std::log(static_cast<double>(x));
}

}  // namespace

std::int64_t MixingScenario::left_states() const { return states_for(states_per_volume, left.volume); }
std::int64_t MixingScenario::right_states() const {
  return states_for(states_per_volume, right.volume);
}

void MixingScenario::validate() const {
  left.validate();
  right.validate();
  if (!(states_per_volume > 0.0) || !std::isfinite(states_per_volume))
    throw DomainError("MixingScenario: states_per_volume must be positive");
  if (!close_rel(left.temperature, right.temperature))
    throw PreconditionError("MixingScenario: left and right temperatures differ");
  if (!close_rel(left.pressure(), right.pressure()))
    throw PreconditionError("MixingScenario: left and right pressures differ");
}

bool origins_distinguished(const MixingScenario& s) {
  switch (s.policy) {
    case DiscriminationPolicy::ByOrigin: return true;
    case DiscriminationPolicy::BySpecies: return !same_kind(s.left.species, s.right.species);
    case DiscriminationPolicy::None: return false;
  }
  return false;
}

ScenarioCounts scenario_counts(const MixingScenario& s) {
  s.validate();
  const double before = n_ln(s.left.n, s.left_states()) + n_ln(s.right.n, s.right_states());
  double after = before;
  if (origins_distinguished(s)) after += ln_binomial(s.total_particles(), s.left.n);
  return {LogQuantity(before), LogQuantity(after)};
}

MixingEntropy boltzmann_mixing_entropy(const MixingScenario& s) {
  s.validate();
  MixingEntropy out;
  out.origins_tracked = origins_distinguished(s);
  if (!out.origins_tracked) return out;
  out.exact = ln_binomial(s.total_particles(), s.left.n);
  const double v = s.left.volume + s.right.volume;
  if (s.left.n > 0) out.leading += static_cast<double>(s.left.n) * std::log(v / s.left.volume);
  if (s.right.n > 0) out.leading += static_cast<double>(s.right.n) * std::log(v / s.right.volume);
  return out;
}

LogQuantity global_count_constant(const MixingScenario& s) {
  const StateSpaceSpec total{s.total_particles(), s.left_states() + s.right_states()};
  switch (s.convention) {
    case CountingConvention::Distinguishable:
    case CountingConvention::CorrectedBoltzmann:
      return LogQuantity(ln_factorial(total.n));
    case CountingConvention::Bose:
    case CountingConvention::Fermi:
      return ln_microstate_count(total, s.convention);
  }
  throw DomainError("unknown counting convention");
}

InertnessPair convention_shift_inertness(const MixingScenario& s, LogQuantity constant) {
  const auto counts = scenario_counts(s);
  InertnessPair out;
  out.delta_without = entropy_difference(counts.after, counts.before);
  out.delta_with = entropy_difference(counts.after / constant, counts.before / constant);
  return out;
}

InertnessPair convention_shift_inertness(const MixingScenario& s) {
  s.validate();
  return convention_shift_inertness(s, global_count_constant(s));
}

// ---------------------------------------------------------------------------

namespace {

struct Fractions {
  double ln_p;  // ln(V1/V)
  double ln_q;  // ln(V2/V)
  double p;
};

Fractions fractions(double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0) || !std::isfinite(v1) || !std::isfinite(v2))
    throw DomainError("Ehrenfest-Trkal: volumes must be positive");
  const double v = v1 + v2;
  return {std::log(v1 / v), std::log(v2 / v), v1 / v};
}

void check_counts(std::int64_t n1, std::int64_t n) {
  if (n < 0 || n1 < 0 || n1 > n)
    throw DomainError("Ehrenfest-Trkal: need 0 <= N1 <= N, got N1=" + std::to_string(n1) +
                      " N=" + std::to_string(n));
}

double log_prob(std::int64_t n1, std::int64_t n, const Fractions& f) {
  const double a = n1 == 0 ? 0.0 : static_cast<double>(n1) * f.ln_p;
  const double b = n1 == n ? 0.0 : static_cast<double>(n - n1) * f.ln_q;
  return ln_binomial(n, n1) + a + b;
}

}  // namespace

double et_log_probability(std::int64_t n1, std::int64_t n, double v1, double v2) {
  check_counts(n1, n);
  return log_prob(n1, n, fractions(v1, v2));
}

double et_probability(std::int64_t n1, std::int64_t n, double v1, double v2) {
  return std::exp(et_log_probability(n1, n, v1, v2));
}

std::vector<double> et_distribution(std::int64_t n, double v1, double v2) {
  check_counts(0, n);
  const auto f = fractions(v1, v2);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = std::exp(log_prob(k, n, f));
  return out;
}

BinomialPeak et_argmax(std::int64_t n, double v1, double v2) {
  check_counts(0, n);
  const auto f = fractions(v1, v2);
  const double centre = static_cast<double>(n) * f.p;
  BinomialPeak peak;
  peak.floor_n1 = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(centre)), 0, n);
  peak.ceil_n1 = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(centre)), 0, n);
  const double lf = log_prob(peak.floor_n1, n, f);
  const double lc = log_prob(peak.ceil_n1, n, f);
  peak.p_floor = std::exp(lf);
  peak.p_ceil = std::exp(lc);
  peak.best = lc > lf ? peak.ceil_n1 : peak.floor_n1;
  return peak;
}

double et_reservoir_log_weight(std::int64_t n1, double mean_occupancy) {
  if (n1 < 0) throw DomainError("reservoir: occupancy must be >= 0");
  if (!(mean_occupancy > 0.0)) throw DomainError("reservoir: mean occupancy must be positive");
  return -ln_factorial(n1) + (n1 == 0 ? 0.0 : static_cast<double>(n1) * std::log(mean_occupancy));
}

double et_reservoir_entropy_change(std::int64_t n1_a, std::int64_t n1_b, double v1, double rho) {
  if (!(v1 > 0.0) || !(rho > 0.0)) throw DomainError("reservoir: V1 and density must be positive");
  if (n1_a == n1_b) {
    if (n1_a < 0) throw DomainError("reservoir: occupancy must be >= 0");
    return 0.0;
  }
  const double lambda = rho * v1;
  return et_reservoir_log_weight(n1_b, lambda) - et_reservoir_log_weight(n1_a, lambda);
}

double et_expansion_entropy(std::int64_t n, double v1, double v2) {
  check_counts(0, n);
  const auto f = fractions(v1, v2);
  if (v1 == v2 && n % 2 != 0)
    throw DomainError("et_expansion_entropy: N must be even for equal volumes");
  if (n == 0) return 0.0;
  const std::int64_t n1 = et_argmax(n, v1, v2).best;
  // ln P(n1) - ln P(N) with the common N ln p folded out.
  const double shift = n1 == n ? 0.0 : static_cast<double>(n - n1) * (f.ln_q - f.ln_p);
  return ln_binomial(n, n1) + shift;
}

double et_equilibrium_log_probability(std::int64_t n, double v1, double v2) {
  check_counts(0, n);
  return log_prob(et_argmax(n, v1, v2).best, n, fractions(v1, v2));
}

double et_unequal_mixing_entropy(std::int64_t n_a, std::int64_t n_b) {
  return et_expansion_entropy(n_a, 1.0, 1.0) + et_expansion_entropy(n_b, 1.0, 1.0);
}

}  // namespace gibbslab
