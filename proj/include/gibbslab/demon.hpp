#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gibbslab::demon {

enum class Origin : std::uint8_t { Left, Right };

/// Parameters of one membrane/demon run. Units: k = m = 1.
struct DemonConfig {
  std::int64_t n_per_side = 500;
  double width = 1.0;
  double height = 1.0;
  double temperature = 1.0;
  double membrane_speed = 0.005;
  std::uint64_t seed = 1;
  bool thermal_walls = true;
  /// Membrane speed may not exceed quasistatic_factor * sqrt(T).
  double quasistatic_factor = 0.01;
  /// Free evolution after the partition is removed; <= 0 means 20 W / sqrt(T).
  double mixing_time = 0.0;
  std::string left_species = "A";
  std::string right_species = "A";

  double thermal_speed() const;
  double effective_mixing_time() const;
  /// Throws ConfigError for bad geometry/counts, QuasiStaticityError for a fast membrane.
  void validate() const;
};

/// Which particles a membrane holds back. Everything else passes through it.
struct Selector {
  enum class Kind : std::uint8_t { Everything, Nothing, ByOrigin, BySpecies };
  Kind kind = Kind::Everything;
  Origin origin = Origin::Left;
  std::string species;

  static Selector everything() { return {}; }
  static Selector nothing() { return {Kind::Nothing, Origin::Left, {}}; }
  static Selector by_origin(Origin o) { return {Kind::ByOrigin, o, {}}; }
  static Selector by_species(std::string s) { return {Kind::BySpecies, Origin::Left, std::move(s)}; }
};

struct Particle {
  Eigen::Vector2d position;  ///< at time `t_last`
  Eigen::Vector2d velocity;
  double t_last = 0.0;
  Origin origin = Origin::Left;
  std::uint32_t species = 0;  ///< index into ParticleEnsemble::species_names
  bool in_left = true;        ///< x < width / 2, maintained by crossing events
};

/// Infinitely thin vertical membrane at x(t) = x0 + velocity (min(t, t_stop) - t0).
struct Membrane {
  Selector blocks;
  std::vector<std::uint8_t> blocked;  ///< per particle, cached from `blocks`
  std::vector<std::int8_t> side;      ///< -1 left of the membrane, +1 right (blocked particles only)
  double x0 = 0.0;
  double t0 = 0.0;
  double velocity = 0.0;
  double t_stop = 0.0;

  double position(double t) const;
  double velocity_at(double t) const { return t < t_stop ? velocity : 0.0; }
};

enum class EventKind : std::uint8_t {
  Wall,
  ThermalWall,
  Membrane,
  Crossing,
  PartitionRemoved,
  SweepStart,
  SweepEnd,
  Sample,
};
std::string_view to_string(EventKind k);

/// One line of the run ledger.
struct LedgerRecord {
  double time = 0.0;
  EventKind kind = EventKind::Wall;
  double work_delta = 0.0;  ///< work done on membranes by this event
  double heat_delta = 0.0;  ///< heat taken in from thermal walls by this event
  std::int64_t left_count = 0;
};

using LedgerSink = std::function<void(const LedgerRecord&)>;

/// Tagged ideal gas in a 2D box plus first-law bookkeeping.
struct ParticleEnsemble {
  DemonConfig config;
  std::vector<Particle> particles;
  std::vector<std::string> species_names;
  std::vector<Membrane> membranes;
  std::mt19937_64 rng;
  double clock = 0.0;
  double work_on_membranes = 0.0;  ///< cumulative, by particle impacts
  double heat_in = 0.0;            ///< cumulative, from thermal walls
  double kinetic_energy = 0.0;     ///< running total
  double initial_kinetic_energy = 0.0;
  double kinetic_energy_time_integral = 0.0;
  std::int64_t left_count = 0;
  std::int64_t events = 0;

  /// Recomputed from particle velocities (not the running total).
  double total_kinetic_energy() const;
  /// |KE + W_on_membranes - Q_in - KE_0| / KE_0 (0 for an empty gas).
  double first_law_residual() const;
  /// Particle positions at the current clock.
  Eigen::Vector2d position_now(std::size_t i) const;
};

/// N particles uniformly in each half, Maxwell–Boltzmann velocities at T,
/// origins by side, and a static impermeable partition at the midline.
ParticleEnsemble init_ensemble(const DemonConfig& cfg);

/// Event-driven free flight for `duration`.
ParticleEnsemble evolve(ParticleEnsemble e, double duration, const LedgerSink& sink = {});
void evolve_in_place(ParticleEnsemble& e, double duration, const LedgerSink& sink = {});

/// Drops every static membrane (the partition).
void remove_partition(ParticleEnsemble& e, const LedgerSink& sink = {});

/// A membrane moving from `from_x` to `to_x` at the configured speed.
struct MembraneMotion {
  Selector blocks;
  double from_x = 0.0;
  double to_x = 0.0;
};

struct SweepResult {
  double work_on_membrane = 0.0;  ///< negative when the membrane compresses the gas
  double heat_in = 0.0;
  double duration = 0.0;
  double mean_kinetic_energy_per_particle = 0.0;  ///< time average over the sweep
  ParticleEnsemble ensemble;
};

/// Moves all membranes together; each stops on reaching its target and the
/// sweep ends when the last one arrives. The membranes are removed afterwards.
SweepResult sweep(ParticleEnsemble e, std::span<const MembraneMotion> motions,
                  const LedgerSink& sink = {});
SweepResult selective_sweep(ParticleEnsemble e, const Selector& blocks, double from_x, double to_x,
                            const LedgerSink& sink = {});

/// Left-half occupancy sampled every `interval` (the first sample one interval in).
std::vector<std::int64_t> sample_left_counts(ParticleEnsemble& e, std::int64_t samples,
                                             double interval, const LedgerSink& sink = {});

struct DemonSummary {
  double membrane_speed = 0.0;
  double work_invested = 0.0;  ///< work done on the gas by the membranes while un-mixing
  double entropy = 0.0;        ///< work_invested / T
  double target = 0.0;         ///< 2 N ln 2
  double relative_deviation = 0.0;
  double heat_in = 0.0;
  double mean_kinetic_energy_per_particle = 0.0;
  double first_law_residual = 0.0;
  std::int64_t events = 0;
};

/// Mix (remove the partition, evolve), then un-mix with two origin-selective
/// membranes swept inward from the outer walls to the midline.
DemonSummary measure_mixing_entropy_by_demon(const DemonConfig& cfg, const LedgerSink& sink = {});

/// One protocol run per speed (same seed), evaluated concurrently.
std::vector<DemonSummary> run_speed_ladder(const DemonConfig& cfg, std::span<const double> speeds);

/// Deterministic text form of a record: CSV (no header) or a JSON object.
std::string format_record(const LedgerRecord& r, bool json);
inline constexpr std::string_view kLedgerCsvHeader = "event_time,event_kind,work_delta,heat_delta,left_count";

/// FNV-1a 64 over formatted CSV records; usable as a LedgerSink.
class LedgerChecksum {
 public:
  void operator()(const LedgerRecord& r);
  std::uint64_t value() const { return hash_; }
  std::int64_t records() const { return records_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  std::int64_t records_ = 0;
};

}  // namespace gibbslab::demon
