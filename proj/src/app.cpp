#include "gibbslab/app.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "gibbslab/counting.hpp"
#include "gibbslab/demon.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/logcomb.hpp"
#include "gibbslab/mixing.hpp"
#include "gibbslab/quantum.hpp"
#include "gibbslab/thermo.hpp"

namespace gibbslab::app {

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw DomainError("unknown output format '" + std::string(s) + "'");
}

std::string_view to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

namespace {

std::string csv_cell(const Json& v) {
  std::string text;
  if (v.is_null())
    return {};
  else if (v.is_string())
    text = v.get<std::string>();
  else
    text = v.dump();
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string render_csv(const std::vector<Json>& records) {
  std::vector<std::string> columns;
  for (const auto& r : records)
    for (const auto& [k, v] : r.items())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_cell(columns[i]);
  out += "\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (r.contains(columns[i])) out += csv_cell(r.at(columns[i]));
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

Json run_count(const Json& p) {
  const StateSpaceSpec spec{p.at("n").get<std::int64_t>(), p.at("x").get<std::int64_t>()};
  const auto conv = parse_counting_convention(p.at("convention").get<std::string>());
  const double ln_w = ln_microstate_count(spec, conv).ln_value();
  Json r;
  r["record"] = "count";
  r["n"] = spec.n;
  r["x"] = spec.x;
  r["convention"] = std::string(to_string(conv));
  r["ln_w"] = ln_w;
  r["w"] = ln_w < std::log(std::numeric_limits<double>::max()) ? Json(std::exp(ln_w)) : Json(nullptr);
  const bool dilute = (conv == CountingConvention::Bose || conv == CountingConvention::Fermi) && spec.n >= 1;
  r["dilute_deviation"] = dilute ? Json(dilute_limit_deviation(spec, conv)) : Json(nullptr);
  r["units"] = "k";
  return r;
}

GasSpecimen specimen_from_json(const Json& j) {
  GasSpecimen g;
  g.species.tag = j.at("species").get<std::string>();
  g.species.similarity = j.value("similarity", 0.0);
  g.n = j.at("n").get<std::int64_t>();
  g.volume = j.at("volume").get<double>();
  g.temperature = j.at("temperature").get<double>();
  return g;
}

std::vector<Json> run_mix(const Json& p) {
  MixingScenario s;
  s.left = specimen_from_json(p.at("left"));
  s.right = specimen_from_json(p.at("right"));
  s.policy = parse_discrimination_policy(p.at("policy").get<std::string>());
  s.convention = parse_counting_convention(p.at("convention").get<std::string>());
  s.states_per_volume = p.at("states_per_volume").get<double>();

  const auto m = boltzmann_mixing_entropy(s);
  const auto inert = convention_shift_inertness(s);
  Json r;
  r["record"] = "mix";
  r["policy"] = std::string(to_string(s.policy));
  r["convention"] = std::string(to_string(s.convention));
  r["same_species"] = same_kind(s.left.species, s.right.species);
  r["origins_tracked"] = m.origins_tracked;
  r["delta_s_exact"] = m.exact;
  r["delta_s_leading"] = m.leading;
  r["stirling_gap"] = m.stirling_gap();
  r["delta_s_thermo"] = thermo_mixing_entropy(s.left, s.right, m.origins_tracked);
  const bool et_applicable = m.origins_tracked && !same_kind(s.left.species, s.right.species) &&
                             s.left.volume == s.right.volume && s.left.n % 2 == 0 &&
                             s.right.n % 2 == 0;
  r["delta_s_open_system"] =
      et_applicable ? Json(et_unequal_mixing_entropy(s.left.n, s.right.n)) : Json(nullptr);
  r["delta_s_with_global_constant"] = inert.delta_with;
  r["delta_s_without_global_constant"] = inert.delta_without;
  r["units"] = "k";
  return {r};
}

std::vector<Json> run_thermo(const Json& p) {
  GasSpecimen g;
  g.species.tag = p.value("species", std::string("A"));
  g.n = p.at("n").get<std::int64_t>();
  g.volume = p.at("volume").get<double>();
  g.temperature = p.at("temperature").get<double>();
  EntropyConvention conv;
  conv.default_c = p.value("c", 0.0);
  const double s_one = ideal_gas_entropy(g, conv);
  GasSpecimen doubled = g;
  doubled.n *= 2;
  doubled.volume *= 2.0;
  const double w_one = isothermal_membrane_work(g.n, g.temperature, 2.0 * g.volume, g.volume);
  Json r;
  r["record"] = "thermo";
  r["entropy_one_side"] = s_one;
  r["entropy_both_sides"] = 2.0 * s_one;
  r["entropy_combined"] = ideal_gas_entropy(doubled, conv);
  r["mixing_entropy_discriminable"] = thermo_mixing_entropy(g, g, true);
  r["mixing_entropy_indiscriminable"] = thermo_mixing_entropy(g, g, false);
  r["membrane_work_per_side"] = -w_one;
  r["membrane_work_over_t"] = -2.0 * w_one / g.temperature;
  r["units"] = "k";
  return {r};
}

std::vector<Json> run_et(const Json& p) {
  const auto n = p.at("n").get<std::int64_t>();
  const double v1 = p.at("v1").get<double>();
  const double v2 = p.at("v2").get<double>();
  const auto dist = et_distribution(n, v1, v2);
  double norm = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double kk = static_cast<double>(k);
    norm += dist[k];
    mean += kk * dist[k];
    second += kk * kk * dist[k];
  }
  const double frac = v1 / (v1 + v2);
  const auto peak = et_argmax(n, v1, v2);
  Json r;
  r["record"] = "open_system";
  r["n"] = n;
  r["normalization"] = norm;
  r["mean"] = mean;
  r["mean_expected"] = static_cast<double>(n) * frac;
  r["variance"] = second - mean * mean;
  r["variance_expected"] = static_cast<double>(n) * frac * (1.0 - frac);
  r["argmax_floor"] = peak.floor_n1;
  r["argmax_ceil"] = peak.ceil_n1;
  r["argmax"] = peak.best;
  const bool symmetric_odd = v1 == v2 && n % 2 != 0;
  r["expansion_entropy"] = symmetric_odd ? Json(nullptr) : Json(et_expansion_entropy(n, v1, v2));
  r["expansion_entropy_leading"] = static_cast<double>(n) * std::log((v1 + v2) / v1);
  r["equilibrium_log_probability"] = et_equilibrium_log_probability(n, v1, v2);
  r["units"] = "k";
  return {r};
}

demon::DemonConfig demon_config_from_json(const Json& p) {
  demon::DemonConfig c;
  c.n_per_side = p.at("n_per_side").get<std::int64_t>();
  c.width = p.at("width").get<double>();
  c.height = p.at("height").get<double>();
  c.temperature = p.at("temperature").get<double>();
  c.membrane_speed = p.at("membrane_speed").get<double>();
  c.seed = p.at("seed").get<std::uint64_t>();
  c.thermal_walls = p.at("thermal_walls").get<bool>();
  c.quasistatic_factor = p.at("quasistatic_factor").get<double>();
  c.mixing_time = p.at("mixing_time").get<double>();
  c.left_species = c.right_species = p.at("species").get<std::string>();
  return c;
}

Json summary_record(const char* kind, const demon::DemonSummary& s, double temperature) {
  Json r;
  r["record"] = kind;
  r["membrane_speed"] = s.membrane_speed;
  r["work_total"] = s.work_invested;
  r["work_total_over_t"] = s.work_invested / temperature;
  r["target"] = s.target;
  r["relative_deviation"] = s.relative_deviation;
  r["heat_in"] = s.heat_in;
  r["mean_kinetic_energy_per_particle"] = s.mean_kinetic_energy_per_particle;
  r["first_law_residual"] = s.first_law_residual;
  r["events"] = s.events;
  r["units"] = "k";
  return r;
}

std::vector<Json> run_demon(const Json& p, Format format, std::ostream* ledger, RunResult& out) {
  const auto cfg = demon_config_from_json(p);
  demon::LedgerChecksum checksum;
  const bool json_lines = format == Format::Json;
  if (ledger && !json_lines) *ledger << demon::kLedgerCsvHeader << '\n';
  const demon::LedgerSink sink = [&](const demon::LedgerRecord& rec) {
    checksum(rec);
    if (ledger) *ledger << demon::format_record(rec, json_lines) << '\n';
  };
  const auto main = demon::measure_mixing_entropy_by_demon(cfg, sink);
  out.has_ledger = true;
  out.ledger_checksum = checksum.value();
  out.ledger_records = checksum.records();

  std::vector<Json> records;
  Json m = summary_record("summary", main, cfg.temperature);
  m["ledger_checksum"] = hex64(checksum.value());
  m["ledger_records"] = checksum.records();
  records.push_back(m);

  const auto ladder_multiples = p.value("speed_ladder", std::vector<double>{});
  if (!ladder_multiples.empty()) {
    std::vector<double> speeds;
    for (double f : ladder_multiples) speeds.push_back(f * cfg.thermal_speed());
    auto ladder_cfg = cfg;
    const double fastest = *std::max_element(ladder_multiples.begin(), ladder_multiples.end());
    ladder_cfg.quasistatic_factor = std::max(cfg.quasistatic_factor, fastest);
    const auto results = demon::run_speed_ladder(ladder_cfg, speeds);
    std::vector<std::pair<double, double>> by_speed;
    for (const auto& r : results) {
      records.push_back(summary_record("ladder", r, cfg.temperature));
      by_speed.emplace_back(r.membrane_speed, r.entropy);
    }
    std::sort(by_speed.begin(), by_speed.end());
    bool monotone = true;
    for (std::size_t i = 1; i < by_speed.size(); ++i)
      monotone = monotone && by_speed[i].second >= by_speed[i - 1].second;
    Json check;
    check["record"] = "ladder_check";
    check["monotone_from_above"] = monotone &&
                                   std::all_of(by_speed.begin(), by_speed.end(), [&](const auto& e) {
                                     return e.second >= main.target;
                                   });
    check["nonincreasing_as_speed_decreases"] = monotone;
    check["units"] = "k";
    records.push_back(check);
  }
  return records;
}

std::vector<Json> run_quantum(const Json& p) {
  using namespace quantum;
  const auto task = p.at("task").get<std::string>();
  Json r;
  r["record"] = task;
  if (task == "enumerate") {
    const auto n = p.at("n").get<std::int64_t>();
    const auto x = p.at("x").get<std::int64_t>();
    const auto stats_name = p.at("statistics").get<std::string>();
    Statistics stats;
    CountingConvention conv;
    if (stats_name == "bose") {
      stats = Statistics::Bose;
      conv = CountingConvention::Bose;
    } else if (stats_name == "fermi") {
      stats = Statistics::Fermi;
      conv = CountingConvention::Fermi;
    } else if (stats_name == "distinguishable") {
      stats = Statistics::Distinguishable;
      conv = CountingConvention::Distinguishable;
    } else {
      throw DomainError("unknown statistics '" + stats_name + "'");
    }
    const auto count = enumerate_states(n, ModeBasis::split(x), stats);
    const double closed = ln_microstate_count({n, x}, conv).ln_value();
    r["n"] = n;
    r["x"] = x;
    r["statistics"] = stats_name;
    r["enumerated"] = count;
    r["closed_form"] = std::llround(std::exp(closed));
    r["ln_w"] = closed;
    r["match"] = std::llround(std::exp(closed)) == count;
  } else if (task == "bookkeeping") {
    const auto n = p.at("n").get<std::int64_t>();
    const auto x = p.at("x").get<std::int64_t>();
    const auto led = symmetrization_bookkeeping(n, n, x, x);
    r["n"] = n;
    r["x"] = x;
    r["flawed_before"] = led.flawed_before.ln_value();
    r["flawed_after"] = led.flawed_after.ln_value();
    r["correct_before"] = led.correct_before.ln_value();
    r["correct_after"] = led.correct_after.ln_value();
    r["delta_flawed"] = led.flawed_delta();
    r["delta_correct"] = led.correct_delta();
    r["difference"] = led.correct_delta() - led.flawed_delta();
    r["ln_binomial_2n_n"] = ln_binomial(2 * n, n);
  } else if (task == "reduced-dm") {
    const auto x = p.at("x").get<std::int64_t>();
    const auto phi = mode_state(x, p.at("phi_mode").get<std::int64_t>());
    const auto psi = mode_state(x, p.at("psi_mode").get<std::int64_t>());
    const auto state = antisymmetrize(phi, psi);
    const OperatorXcd expected = 0.5 * (phi * phi.adjoint() + psi * psi.adjoint());
    double max_error = 0.0;
    Json eig = Json::array();
    for (Label which : {Label::First, Label::Second}) {
      const auto rho = reduced_density_matrix(state, which);
      rho.validate();
      max_error = std::max(max_error, (rho.matrix() - expected).cwiseAbs().maxCoeff());
      if (which == Label::First) {
        const auto ev = rho.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
          if (std::abs(ev(i)) > 1e-12) eig.push_back(ev(i));
      }
    }
    r["x"] = x;
    r["nonzero_eigenvalues"] = eig;
    r["max_entry_error"] = max_error;
  } else if (task == "orthogonality") {
    const auto x = p.at("x").get<std::int64_t>();
    const auto steps = p.at("steps").get<std::int64_t>();
    std::mt19937_64 rng(p.at("seed").get<std::uint64_t>());
    const auto basis = ModeBasis::split(x);
    const auto u = haar_unitary(x, rng);
    r["x"] = x;
    r["steps"] = steps;
    r["max_overlap"] = evolve_and_check_orthogonality(compartment_state(basis, Compartment::Left),
                                                      compartment_state(basis, Compartment::Right),
                                                      u, steps);
  } else {
    throw DomainError("unknown quantum task '" + task + "'");
  }
  r["units"] = "k";
  return {r};
}

}  // namespace

std::string render(const Report& report, Format format) {
  if (format == Format::Csv) return render_csv(report.records);
  Json doc;
  doc["subcommand"] = report.subcommand;
  doc["version"] = GIBBSLAB_VERSION;
  doc["units"] = "k";
  doc["records"] = report.records;
  return doc.dump(2) + "\n";
}

std::string render_error(std::string_view kind, std::string_view message, int line,
                         std::string_view field, Format format) {
  Json err;
  err["kind"] = std::string(kind);
  err["message"] = std::string(message);
  err["line"] = line > 0 ? Json(line) : Json(nullptr);
  err["field"] = field.empty() ? Json(nullptr) : Json(std::string(field));
  if (format == Format::Csv) {
    Json flat;
    flat["error_kind"] = err["kind"];
    flat["error_message"] = err["message"];
    flat["line"] = err["line"];
    flat["field"] = err["field"];
    return render_csv({flat});
  }
  Json doc;
  doc["error"] = err;
  return doc.dump(2) + "\n";
}

bool is_stochastic(std::string_view subcommand, const Json& params) {
  if (subcommand == "demon") return true;
  return subcommand == "quantum" && params.value("task", std::string()) == "orthogonality";
}

RunResult run(std::string_view subcommand, const Json& params, Format format, std::ostream* ledger) {
  RunResult out;
  out.report.subcommand = std::string(subcommand);
  try {
    if (subcommand == "count")
      out.report.records = {run_count(params)};
    else if (subcommand == "mix")
      out.report.records = run_mix(params);
    else if (subcommand == "thermo")
      out.report.records = run_thermo(params);
    else if (subcommand == "et")
      out.report.records = run_et(params);
    else if (subcommand == "demon")
      out.report.records = run_demon(params, format, ledger, out);
    else if (subcommand == "quantum")
      out.report.records = run_quantum(params);
    else
      throw DomainError("unknown subcommand '" + std::string(subcommand) + "'");
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad parameters: ") + e.what());
  }
  out.primary = render(out.report, format);
  return out;
}

Json make_manifest(std::string_view subcommand, const Json& params, Format format,
                   const RunResult& result) {
  Json m;
  m["subcommand"] = std::string(subcommand);
  m["parameters"] = params;
  m["seed"] = params.contains("seed") ? params.at("seed") : Json(nullptr);
  m["version"] = GIBBSLAB_VERSION;
  m["format"] = std::string(to_string(format));
  m["output_checksum"] = hex64(fnv1a64(result.primary));
  if (result.has_ledger) {
    m["ledger_checksum"] = hex64(result.ledger_checksum);
    m["ledger_records"] = result.ledger_records;
  }
  return m;
}

RerunOutcome rerun(const Json& manifest, std::ostream* ledger) {
  const auto subcommand = manifest.at("subcommand").get<std::string>();
  const auto format = parse_format(manifest.at("format").get<std::string>());
  RerunOutcome o;
  o.result = run(subcommand, manifest.at("parameters"), format, ledger);
  o.matches = hex64(fnv1a64(o.result.primary)) == manifest.at("output_checksum").get<std::string>();
  if (manifest.contains("ledger_checksum"))
    o.matches = o.matches && hex64(o.result.ledger_checksum) ==
                                 manifest.at("ledger_checksum").get<std::string>();
  return o;
}

}  // namespace gibbslab::app
