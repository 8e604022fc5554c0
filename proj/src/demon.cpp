#include "gibbslab/demon.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <queue>

#include "gibbslab/errors.hpp"

namespace gibbslab::demon {

double DemonConfig::thermal_speed() const { return std::sqrt(temperature); }

double DemonConfig::effective_mixing_time() const {
  return mixing_time > 0.0 ? mixing_time : 20.0 * width / thermal_speed();
}

void DemonConfig::validate() const {
  if (n_per_side < 0) throw ConfigError("n_per_side must be >= 0", 0, "n_per_side");
  if (!(width > 0.0) || !std::isfinite(width)) throw ConfigError("width must be positive", 0, "width");
  if (!(height > 0.0) || !std::isfinite(height))
    throw ConfigError("height must be positive", 0, "height");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw ConfigError("temperature must be positive", 0, "temperature");
  if (!(membrane_speed > 0.0) || !std::isfinite(membrane_speed))
    throw ConfigError("membrane_speed must be positive", 0, "membrane_speed");
  if (!(quasistatic_factor > 0.0))
    throw ConfigError("quasistatic_factor must be positive", 0, "quasistatic_factor");
  if (mixing_time < 0.0) throw ConfigError("mixing_time must be >= 0", 0, "mixing_time");
  if (membrane_speed > quasistatic_factor * thermal_speed() * (1.0 + 1e-12))
    throw QuasiStaticityError("membrane_speed " + std::to_string(membrane_speed) + " exceeds " +
                              std::to_string(quasistatic_factor) + " * sqrt(T)");
}

double Membrane::position(double t) const { return x0 + velocity * (std::min(t, t_stop) - t0); }

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Wall: return "wall";
    case EventKind::ThermalWall: return "thermal_wall";
    case EventKind::Membrane: return "membrane";
    case EventKind::Crossing: return "crossing";
    case EventKind::PartitionRemoved: return "partition_removed";
    case EventKind::SweepStart: return "sweep_start";
    case EventKind::SweepEnd: return "sweep_end";
    case EventKind::Sample: return "sample";
  }
  return "?";
}

double ParticleEnsemble::total_kinetic_energy() const {
  double ke = 0.0;
  for (const auto& p : particles) ke += 0.5 * p.velocity.squaredNorm();
  return ke;
}

double ParticleEnsemble::first_law_residual() const {
  if (initial_kinetic_energy == 0.0) return 0.0;
  const double balance = total_kinetic_energy() + work_on_membranes - heat_in;
  return std::abs(balance - initial_kinetic_energy) / initial_kinetic_energy;
}

Eigen::Vector2d ParticleEnsemble::position_now(std::size_t i) const {
  const auto& p = particles.at(i);
  return p.position + p.velocity * (clock - p.t_last);
}

namespace {

bool selects(const Selector& s, const Particle& p, const std::vector<std::string>& names) {
  switch (s.kind) {
    case Selector::Kind::Everything: return true;
    case Selector::Kind::Nothing: return false;
    case Selector::Kind::ByOrigin: return p.origin == s.origin;
    case Selector::Kind::BySpecies: return names[p.species] == s.species;
  }
  return false;
}

void emit(const LedgerSink& sink, const ParticleEnsemble& e, EventKind kind, double work = 0.0,
          double heat = 0.0) {
  if (sink) sink(LedgerRecord{e.clock, kind, work, heat, e.left_count});
}

Membrane make_membrane(const ParticleEnsemble& e, Selector blocks, double x0, double velocity,
                       double t_stop) {
  Membrane m;
  m.blocks = std::move(blocks);
  m.x0 = x0;
  m.t0 = e.clock;
  m.velocity = velocity;
  m.t_stop = t_stop;
  const double w = e.config.width;
  m.blocked.resize(e.particles.size());
  m.side.resize(e.particles.size());
  for (std::size_t i = 0; i < e.particles.size(); ++i) {
    const auto& p = e.particles[i];
    m.blocked[i] = selects(m.blocks, p, e.species_names) ? 1 : 0;
    const double x = e.position_now(i).x();
    if (x0 >= w)
      m.side[i] = -1;
    else if (x0 <= 0.0)
      m.side[i] = 1;
    else
      m.side[i] = x < x0 ? -1 : 1;
  }
  return m;
}

enum class Hit : std::uint8_t { None, WallXLow, WallXHigh, WallYLow, WallYHigh, Crossing, Membrane };

struct Prediction {
  double time = std::numeric_limits<double>::infinity();
  Hit hit = Hit::None;
  std::size_t membrane = 0;
};

struct Scheduled {
  double time;
  std::size_t particle;
  std::uint64_t version;
};

struct Later {
  bool operator()(const Scheduled& a, const Scheduled& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.particle > b.particle;
  }
};

// Runs the event loop over an ensemble. Particles are independent, so each one
// carries exactly one pending event; stale queue entries are skipped by version.
class Simulator {
 public:
  Simulator(ParticleEnsemble& e, const LedgerSink& sink)
      : e_(e), sink_(sink), pending_(e.particles.size()), version_(e.particles.size(), 0) {
    reschedule_all();
  }

  // Brings every particle to the current clock and predicts afresh. Needed
  // whenever the membrane set or a membrane's motion changes.
  void reschedule_all() {
    for (auto& p : e_.particles) {
      p.position += p.velocity * (e_.clock - p.t_last);
      p.t_last = e_.clock;
    }
    queue_ = {};
    for (std::size_t i = 0; i < e_.particles.size(); ++i) schedule(i);
  }

  void run_until(double t_stop) {
    while (!queue_.empty() && queue_.top().time <= t_stop) {
      const Scheduled s = queue_.top();
      queue_.pop();
      if (s.version != version_[s.particle]) continue;
      advance_clock(s.time);
      process(s.particle);
      schedule(s.particle);
    }
    advance_clock(t_stop);
  }

 private:
  void advance_clock(double t) {
    if (t > e_.clock) {
      e_.kinetic_energy_time_integral += e_.kinetic_energy * (t - e_.clock);
      e_.clock = t;
    }
  }

  Prediction predict(std::size_t i) const {
    const auto& p = e_.particles[i];
    const double w = e_.config.width;
    const double h = e_.config.height;
    const double mid = 0.5 * w;
    const double x = p.position.x();
    const double y = p.position.y();
    const double vx = p.velocity.x();
    const double vy = p.velocity.y();
    Prediction best;
    auto consider = [&](double dt, Hit hit, std::size_t k = 0) {
      const double t = p.t_last + std::max(dt, 0.0);
      if (t < best.time) best = {t, hit, k};
    };
    if (vy > 0.0) consider((h - y) / vy, Hit::WallYHigh);
    if (vy < 0.0) consider(y / -vy, Hit::WallYLow);
    if (vx > 0.0) consider((w - x) / vx, Hit::WallXHigh);
    if (vx < 0.0) consider(x / -vx, Hit::WallXLow);
    if (p.in_left && vx > 0.0) consider((mid - x) / vx, Hit::Crossing);
    if (!p.in_left && vx < 0.0) consider((x - mid) / -vx, Hit::Crossing);
    for (std::size_t k = 0; k < e_.membranes.size(); ++k) {
      const auto& m = e_.membranes[k];
      if (!m.blocked[i]) continue;
      const double gap = x - m.position(p.t_last);
      const double closing = vx - m.velocity_at(p.t_last);
      if (m.side[i] < 0 && closing > 0.0) consider(-gap / closing, Hit::Membrane, k);
      if (m.side[i] > 0 && closing < 0.0) consider(gap / -closing, Hit::Membrane, k);
    }
    return best;
  }

  void schedule(std::size_t i) {
    pending_[i] = predict(i);
    ++version_[i];
    if (pending_[i].hit != Hit::None) queue_.push({pending_[i].time, i, version_[i]});
  }

  // New velocity leaving a wall with inward unit normal along `axis` (sign `dir`).
  void thermalize(Particle& p, int axis, double dir) {
    const double t = e_.config.temperature;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(t));
    const double normal = std::sqrt(-2.0 * t * std::log1p(-uniform(e_.rng)));
    const double tangential = gauss(e_.rng);
    p.velocity[axis] = dir * normal;
    p.velocity[1 - axis] = tangential;
  }

  void process(std::size_t i) {
    auto& p = e_.particles[i];
    const Prediction ev = pending_[i];
    p.position += p.velocity * (ev.time - p.t_last);
    p.t_last = ev.time;
    const double ke_before = 0.5 * p.velocity.squaredNorm();
    const bool thermal = e_.config.thermal_walls;
    double work = 0.0;
    double heat = 0.0;
    EventKind kind = EventKind::Wall;

    auto wall = [&](int axis, double at, double inward) {
      p.position[axis] = at;
      if (thermal) {
        thermalize(p, axis, inward);
        heat = 0.5 * p.velocity.squaredNorm() - ke_before;
        kind = EventKind::ThermalWall;
      } else {
        p.velocity[axis] = -p.velocity[axis];
      }
    };

    switch (ev.hit) {
      case Hit::WallXLow: wall(0, 0.0, 1.0); break;
      case Hit::WallXHigh: wall(0, e_.config.width, -1.0); break;
      case Hit::WallYLow: wall(1, 0.0, 1.0); break;
      case Hit::WallYHigh: wall(1, e_.config.height, -1.0); break;
      case Hit::Crossing:
        p.position.x() = 0.5 * e_.config.width;
        p.in_left = !p.in_left;
        e_.left_count += p.in_left ? 1 : -1;
        kind = EventKind::Crossing;
        break;
      case Hit::Membrane: {
        const auto& m = e_.membranes[ev.membrane];
        const double u = m.velocity_at(ev.time);
        const double vx = p.velocity.x();
        const double reflected = 2.0 * u - vx;
        p.position.x() = m.position(ev.time);
        p.velocity.x() = reflected;
        work = 0.5 * (vx * vx - reflected * reflected);
        kind = EventKind::Membrane;
        break;
      }
      case Hit::None: return;
    }
    e_.kinetic_energy += 0.5 * p.velocity.squaredNorm() - ke_before;
    e_.work_on_membranes += work;
    e_.heat_in += heat;
    ++e_.events;
    emit(sink_, e_, kind, work, heat);
  }

  ParticleEnsemble& e_;
  const LedgerSink& sink_;
  std::vector<Prediction> pending_;
  std::vector<std::uint64_t> version_;
  std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue_;
};

}  // namespace

ParticleEnsemble init_ensemble(const DemonConfig& cfg) {
  cfg.validate();
  ParticleEnsemble e;
  e.config = cfg;
  e.rng.seed(cfg.seed);
  e.species_names.push_back(cfg.left_species);
  const std::uint32_t right_species = cfg.right_species == cfg.left_species ? 0u : 1u;
  if (right_species == 1u) e.species_names.push_back(cfg.right_species);

  const double half = 0.5 * cfg.width;
  std::uniform_real_distribution<double> ux(0.0, half);
  std::uniform_real_distribution<double> uy(0.0, cfg.height);
  std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.temperature));
  e.particles.reserve(static_cast<std::size_t>(2 * cfg.n_per_side));
  for (Origin origin : {Origin::Left, Origin::Right}) {
    const double offset = origin == Origin::Left ? 0.0 : half;
    for (std::int64_t k = 0; k < cfg.n_per_side; ++k) {
      Particle p;
      p.position = {offset + ux(e.rng), uy(e.rng)};
      p.velocity = {gauss(e.rng), gauss(e.rng)};
      p.origin = origin;
      p.species = origin == Origin::Left ? 0u : right_species;
      p.in_left = origin == Origin::Left;
      e.particles.push_back(p);
    }
  }
  e.left_count = cfg.n_per_side;
  e.kinetic_energy = e.total_kinetic_energy();
  e.initial_kinetic_energy = e.kinetic_energy;
  // Static impermeable partition at the midline.
  e.membranes.push_back(make_membrane(e, Selector::everything(), half, 0.0,
                                      std::numeric_limits<double>::infinity()));
  return e;
}

void evolve_in_place(ParticleEnsemble& e, double duration, const LedgerSink& sink) {
  if (!(duration >= 0.0)) throw DomainError("evolve: duration must be >= 0");
  if (duration == 0.0) return;
  Simulator sim(e, sink);
  sim.run_until(e.clock + duration);
}

ParticleEnsemble evolve(ParticleEnsemble e, double duration, const LedgerSink& sink) {
  evolve_in_place(e, duration, sink);
  return e;
}

void remove_partition(ParticleEnsemble& e, const LedgerSink& sink) {
  std::erase_if(e.membranes, [](const Membrane& m) { return m.velocity == 0.0; });
  emit(sink, e, EventKind::PartitionRemoved);
}

SweepResult sweep(ParticleEnsemble e, std::span<const MembraneMotion> motions,
                  const LedgerSink& sink) {
  e.config.validate();
  if (!e.config.thermal_walls)
    throw PreconditionError("sweep: thermal walls are required for an isothermal sweep");
  const double w = e.config.width;
  const double speed = e.config.membrane_speed;
  const std::size_t first_new = e.membranes.size();
  std::vector<double> stops;
  for (const auto& mo : motions) {
    if (mo.from_x < 0.0 || mo.from_x > w || mo.to_x < 0.0 || mo.to_x > w)
      throw DomainError("sweep: membrane positions must lie inside the box");
    const double distance = std::abs(mo.to_x - mo.from_x);
    const double t_stop = e.clock + distance / speed;
    const double velocity = mo.to_x >= mo.from_x ? speed : -speed;
    e.membranes.push_back(make_membrane(e, mo.blocks, mo.from_x, distance == 0.0 ? 0.0 : velocity,
                                        t_stop));
    stops.push_back(t_stop);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double work0 = e.work_on_membranes;
  const double heat0 = e.heat_in;
  const double ke_integral0 = e.kinetic_energy_time_integral;
  const double t_begin = e.clock;
  emit(sink, e, EventKind::SweepStart);
  {
    Simulator sim(e, sink);
    for (double t_stop : stops) {
      sim.run_until(t_stop);
      sim.reschedule_all();
    }
  }
  emit(sink, e, EventKind::SweepEnd);
  e.membranes.erase(e.membranes.begin() + static_cast<std::ptrdiff_t>(first_new), e.membranes.end());

  SweepResult r;
  r.work_on_membrane = e.work_on_membranes - work0;
  r.heat_in = e.heat_in - heat0;
  r.duration = e.clock - t_begin;
  if (r.duration > 0.0 && !e.particles.empty())
    r.mean_kinetic_energy_per_particle = (e.kinetic_energy_time_integral - ke_integral0) /
                                         r.duration / static_cast<double>(e.particles.size());
  r.ensemble = std::move(e);
  return r;
}

SweepResult selective_sweep(ParticleEnsemble e, const Selector& blocks, double from_x, double to_x,
                            const LedgerSink& sink) {
  const std::array<MembraneMotion, 1> motion{MembraneMotion{blocks, from_x, to_x}};
  return sweep(std::move(e), motion, sink);
}

std::vector<std::int64_t> sample_left_counts(ParticleEnsemble& e, std::int64_t samples,
                                             double interval, const LedgerSink& sink) {
  if (samples < 0 || !(interval > 0.0))
    throw DomainError("sample_left_counts: need samples >= 0 and interval > 0");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(samples));
  Simulator sim(e, sink);
  for (std::int64_t s = 0; s < samples; ++s) {
    sim.run_until(e.clock + interval);
    out.push_back(e.left_count);
    emit(sink, e, EventKind::Sample);
  }
  return out;
}

DemonSummary measure_mixing_entropy_by_demon(const DemonConfig& cfg, const LedgerSink& sink) {
  cfg.validate();
  if (cfg.left_species != cfg.right_species)
    throw PreconditionError("demon protocol: both sides must hold the same species");
  auto e = init_ensemble(cfg);
  remove_partition(e, sink);
  evolve_in_place(e, cfg.effective_mixing_time(), sink);

  const double w = cfg.width;
  const std::array<MembraneMotion, 2> motions{
      MembraneMotion{Selector::by_origin(Origin::Left), w, 0.5 * w},
      MembraneMotion{Selector::by_origin(Origin::Right), 0.0, 0.5 * w},
  };
  auto r = sweep(std::move(e), motions, sink);

  DemonSummary s;
  s.membrane_speed = cfg.membrane_speed;
  s.work_invested = -r.work_on_membrane;
  s.entropy = s.work_invested / cfg.temperature;
  s.target = 2.0 * static_cast<double>(cfg.n_per_side) * std::numbers::ln2;
  s.relative_deviation = s.target > 0.0 ? (s.entropy - s.target) / s.target : 0.0;
  s.heat_in = r.heat_in;
  s.mean_kinetic_energy_per_particle = r.mean_kinetic_energy_per_particle;
  s.first_law_residual = r.ensemble.first_law_residual();
  s.events = r.ensemble.events;
  return s;
}

std::vector<DemonSummary> run_speed_ladder(const DemonConfig& cfg, std::span<const double> speeds) {
  std::vector<std::future<DemonSummary>> jobs;
  for (double v : speeds) {
    DemonConfig c = cfg;
    c.membrane_speed = v;
    c.validate();
    jobs.push_back(std::async(std::launch::async, [c] { return measure_mixing_entropy_by_demon(c); }));
  }
  std::vector<DemonSummary> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

namespace {

void append_double(std::string& s, double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  s.append(buf.data(), end);
}

}  // namespace

std::string format_record(const LedgerRecord& r, bool json) {
  std::string s;
  s.reserve(96);
  if (json) {
    s += "{\"event_time\":";
    append_double(s, r.time);
    s += ",\"event_kind\":\"";
    s += to_string(r.kind);
    s += "\",\"work_delta\":";
    append_double(s, r.work_delta);
    s += ",\"heat_delta\":";
    append_double(s, r.heat_delta);
    s += ",\"left_count\":";
    s += std::to_string(r.left_count);
    s += '}';
  } else {
    append_double(s, r.time);
    s += ',';
    s += to_string(r.kind);
    s += ',';
    append_double(s, r.work_delta);
    s += ',';
    append_double(s, r.heat_delta);
    s += ',';
    s += std::to_string(r.left_count);
  }
  return s;
}

void LedgerChecksum::operator()(const LedgerRecord& r) {
  const std::string line = format_record(r, false);
  for (unsigned char c : line) {
    hash_ ^= c;
    hash_ *= 0x100000001b3ULL;
  }
  hash_ ^= '\n';
  hash_ *= 0x100000001b3ULL;
  ++records_;
}

}  // namespace gibbslab::demon
