#include "gibbslab/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "gibbslab/errors.hpp"

namespace gibbslab {

namespace {

bool close_rel(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

void GasSpecimen::validate() const {
  if (n < 0) throw DomainError("GasSpecimen: particle count must be >= 0");
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw DomainError("GasSpecimen: volume must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw DomainError("GasSpecimen: temperature must be positive");
}

double ideal_gas_entropy(const GasSpecimen& g, const EntropyConvention& conv) {
  g.validate();
  if (g.n == 0) return 0.0;
  const double n = static_cast<double>(g.n);
  return 2.5 * n * std::log(g.temperature) - n * std::log(g.pressure()) + conv.c_for(g.species) * n;
}

double entropy_difference_by_path(const GasSpecimen& start, const GasSpecimen& end,
                                  std::span<const ThermoState> path, std::int64_t steps) {
  start.validate();
  end.validate();
  if (start.species.tag != end.species.tag || start.n != end.n)
    throw PreconditionError("entropy_difference_by_path: endpoints must share species and N");
  if (steps < 1) throw DomainError("entropy_difference_by_path: steps must be >= 1");
  if (path.empty()) throw DomainError("entropy_difference_by_path: empty path");
  for (const auto& s : path)
    if (!(s.pressure > 0.0) || !(s.temperature > 0.0))
      throw DomainError("entropy_difference_by_path: path leaves the P > 0, T > 0 quadrant");
  const auto& first = path.front();
  const auto& last = path.back();
  if (start.n > 0 && (!close_rel(first.pressure, start.pressure()) ||
                      !close_rel(first.temperature, start.temperature)))
    throw PreconditionError("entropy_difference_by_path: path does not begin at the start state");
  if (end.n > 0 &&
      (!close_rel(last.pressure, end.pressure()) || !close_rel(last.temperature, end.temperature)))
    throw PreconditionError("entropy_difference_by_path: path does not finish at the end state");
  if (start.n == 0) return 0.0;

  const double n = static_cast<double>(start.n);
  double total = 0.0;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const double lp0 = std::log(path[seg].pressure);
    const double lt0 = std::log(path[seg].temperature);
    const double dlp = (std::log(path[seg + 1].pressure) - lp0) / static_cast<double>(steps);
    const double dlt = (std::log(path[seg + 1].temperature) - lt0) / static_cast<double>(steps);
    auto temperature_at = [&](double s) { return std::exp(lt0 + s * dlt); };
    auto pressure_at = [&](double s) { return std::exp(lp0 + s * dlp); };
    for (std::int64_t i = 0; i < steps; ++i) {
      const double a = static_cast<double>(i);
      const double t_a = temperature_at(a);
      const double t_b = temperature_at(a + 1.0);
      const double v_a = n * t_a / pressure_at(a);
      const double v_b = n * t_b / pressure_at(a + 1.0);
      const double t_mid = temperature_at(a + 0.5);
      const double p_mid = pressure_at(a + 0.5);
      const double heat = 1.5 * n * (t_b - t_a) + p_mid * (v_b - v_a);
      total += heat / t_mid;
    }
  }
  return total;
}

double thermo_mixing_entropy(const GasSpecimen& left, const GasSpecimen& right,
                             bool discriminable) {
  left.validate();
  right.validate();
  if (!close_rel(left.temperature, right.temperature))
    throw PreconditionError("thermo_mixing_entropy: temperatures differ");
  if (!close_rel(left.pressure(), right.pressure()) &&
      !(left.pressure() == 0.0 && right.pressure() == 0.0))
    throw PreconditionError("thermo_mixing_entropy: pressures differ");
  if (!discriminable) return 0.0;
  const double v = left.volume + right.volume;
  double s = 0.0;
  if (left.n > 0) s += static_cast<double>(left.n) * std::log(v / left.volume);
  if (right.n > 0) s += static_cast<double>(right.n) * std::log(v / right.volume);
  return s;
}

double isothermal_membrane_work(std::int64_t n, double temperature, double v_from, double v_to) {
  if (n < 0) throw DomainError("isothermal_membrane_work: negative particle count");
  if (!(temperature > 0.0)) throw DomainError("isothermal_membrane_work: temperature must be positive");
  if (!(v_from > 0.0) || !(v_to > 0.0))
    throw DomainError("isothermal_membrane_work: volumes must be positive");
  return static_cast<double>(n) * temperature * std::log(v_to / v_from);
}

}  // namespace gibbslab
