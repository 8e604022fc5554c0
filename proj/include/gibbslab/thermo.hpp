#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace gibbslab {

/// Species tag. `similarity` is free-form metadata (a label distance to some
/// reference species); no computation reads it.
struct Species {
  std::string tag;
  double similarity = 0.0;

  friend bool same_kind(const Species& a, const Species& b) { return a.tag == b.tag; }
};

/// Contents of one compartment of ideal gas. Units: k = 1, temperature in
/// energy units. Pressure is always derived, never stored.
struct GasSpecimen {
  Species species;
  std::int64_t n = 0;
  double volume = 1.0;
  double temperature = 1.0;

  double pressure() const { return static_cast<double>(n) * temperature / volume; }
  /// Throws DomainError unless n >= 0, V > 0, T > 0.
  void validate() const;
};

/// Per-species additive constant c in S = (5/2) N ln T - N ln P + c N.
/// Species without an entry use `default_c` (0 unless set).
struct EntropyConvention {
  std::map<std::string, double> c_by_species;
  double default_c = 0.0;

  double c_for(const Species& s) const {
    auto it = c_by_species.find(s.tag);
    return it == c_by_species.end() ? default_c : it->second;
  }
};

struct ThermoState {
  double pressure;
  double temperature;
};

double ideal_gas_entropy(const GasSpecimen& g, const EntropyConvention& conv = {});

/// Quadrature of dQ/T along `path` (waypoints in (P, T)), log-linear between
/// waypoints with `steps` midpoint sub-steps per segment. The heat per sub-step
/// comes from the first law, dQ = (3/2) N dT + P dV, so the result converges to
/// the closed-form entropy difference rather than reproducing it by construction.
double entropy_difference_by_path(const GasSpecimen& start, const GasSpecimen& end,
                                  std::span<const ThermoState> path, std::int64_t steps);

/// Entropy of mixing from the membrane process. Zero when the gases cannot be
/// told apart; requires equal T and P on both sides.
double thermo_mixing_entropy(const GasSpecimen& left, const GasSpecimen& right,
                             bool discriminable);

/// Reversible isothermal work delivered by N particles held by a selective
/// membrane swept from V_from to V_to: N T ln(V_to / V_from).
double isothermal_membrane_work(std::int64_t n, double temperature, double v_from, double v_to);

}  // namespace gibbslab
