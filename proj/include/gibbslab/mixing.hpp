#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gibbslab/counting.hpp"
#include "gibbslab/logcomb.hpp"
#include "gibbslab/thermo.hpp"

namespace gibbslab {

/// What the experimenter is willing to tell apart.
///  - BySpecies: species tags only.
///  - ByOrigin:  species tags and the compartment a particle started in.
///  - None:      nothing; all particles are interchangeable for bookkeeping.
enum class DiscriminationPolicy { BySpecies, ByOrigin, None };

std::string_view to_string(DiscriminationPolicy p);
/// Accepts "by-species", "by-origin", "none".
DiscriminationPolicy parse_discrimination_policy(std::string_view s);

/// Two compartments at equal P and T separated by a removable partition.
/// Each compartment offers round(states_per_volume * V) one-particle states
/// (at least one).
struct MixingScenario {
  GasSpecimen left;
  GasSpecimen right;
  DiscriminationPolicy policy = DiscriminationPolicy::BySpecies;
  CountingConvention convention = CountingConvention::Distinguishable;
  double states_per_volume = 1.0;

  std::int64_t total_particles() const { return left.n + right.n; }
  std::int64_t left_states() const;
  std::int64_t right_states() const;
  /// Throws PreconditionError on unequal T or P, DomainError on bad fields.
  void validate() const;
};

/// Whether the policy can tell left-origin from right-origin particles.
bool origins_distinguished(const MixingScenario& s);

/// Microstate counts before and after partition removal (labelled particles,
/// no global constant). After removal only the equilibrium occupancy is
/// counted, which keeps N_left on the left because densities are equal.
struct ScenarioCounts {
  LogQuantity before;
  LogQuantity after;
};
ScenarioCounts scenario_counts(const MixingScenario& s);

struct MixingEntropy {
  double exact = 0.0;    ///< ln C(N_tot, N_left) or 0
  double leading = 0.0;  ///< Stirling leading order, N_l ln(V/V_l) + N_r ln(V/V_r) or 0
  bool origins_tracked = false;
  double stirling_gap() const { return leading - exact; }
};

/// Entropy change on removing the partition, counted with labelled particles
/// and with every interchange the policy cannot see quotiented out.
MixingEntropy boltzmann_mixing_entropy(const MixingScenario& s);

struct InertnessPair {
  double delta_without = 0.0;
  double delta_with = 0.0;
};

/// The count constant that depends on the conserved total only: ln (N_tot)!
/// for Distinguishable / CorrectedBoltzmann, the total Bose or Fermi count
/// for N_tot particles over all states otherwise.
LogQuantity global_count_constant(const MixingScenario& s);

/// Entropy change with raw counts and with both counts divided by `constant`.
InertnessPair convention_shift_inertness(const MixingScenario& s, LogQuantity constant);
/// Same, using global_count_constant(s).
InertnessPair convention_shift_inertness(const MixingScenario& s);

// ---------------------------------------------------------------------------
// Open-system (Ehrenfest–Trkal) calculation: N particles shared between V1 and
// V2, N1 binomially distributed.

double et_log_probability(std::int64_t n1, std::int64_t n, double v1, double v2);
double et_probability(std::int64_t n1, std::int64_t n, double v1, double v2);
/// P(0), ..., P(N).
std::vector<double> et_distribution(std::int64_t n, double v1, double v2);

struct BinomialPeak {
  std::int64_t floor_n1 = 0;
  std::int64_t ceil_n1 = 0;
  double p_floor = 0.0;
  double p_ceil = 0.0;
  std::int64_t best = 0;  ///< whichever of floor/ceil has the larger probability (floor on ties)
};
/// Peak candidates around N V1 / (V1 + V2).
BinomialPeak et_argmax(std::int64_t n, double v1, double v2);

/// -ln N1! + N1 ln(λ): the N1-dependent part of ln P once the reservoir is infinite.
double et_reservoir_log_weight(std::int64_t n1, double mean_occupancy);

/// Entropy change of a subsystem of volume V1 in contact with an infinite
/// reservoir at number density rho when its occupancy goes from n1_a to n1_b.
double et_reservoir_entropy_change(std::int64_t n1_a, std::int64_t n1_b, double v1, double rho);

/// ln[ P(equilibrium N1) / P(N1 = N) ]: free expansion of N particles from V1
/// into V1 + V2. Equals ln C(N, N/2) when V1 = V2 (N must then be even).
double et_expansion_entropy(std::int64_t n, double v1, double v2);

/// ln P(equilibrium N1), the single-probability expression (it is small and
/// negative; reported next to et_expansion_entropy for comparison).
double et_equilibrium_log_probability(std::int64_t n, double v1, double v2);

/// Two species, one per half of equal volumes, each expanding independently.
double et_unequal_mixing_entropy(std::int64_t n_a, std::int64_t n_b);

}  // namespace gibbslab
