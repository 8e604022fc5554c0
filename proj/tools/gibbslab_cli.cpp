// gibbslab command-line front end.
//
//   gibbslab count   --n N --x X --convention C
//   gibbslab mix     SCENARIO_FILE
//   gibbslab thermo  --n N --volume V --temperature T [--c C]
//   gibbslab et      --n N [--v1 V1] [--v2 V2]
//   gibbslab demon   CONFIG_FILE [--seed S]
//   gibbslab quantum TASK [--n N] [--x X] [--statistics S] [--steps K] [--seed S]
//   gibbslab rerun   MANIFEST
//
// Every subcommand takes --format json|csv. Results go to stdout; the run
// manifest (and the demon ledger) go to $GIBBSLAB_OUTPUT_DIR, default
// ./gibbslab-out.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "gibbslab/app.hpp"
#include "gibbslab/config.hpp"
#include "gibbslab/errors.hpp"

namespace fs = std::filesystem;
using gibbslab::app::Format;
using gibbslab::app::Json;

namespace {

fs::path output_dir() {
  const char* env = std::getenv("GIBBSLAB_OUTPUT_DIR");
  return env && *env ? fs::path(env) : fs::path("gibbslab-out");
}

std::string ledger_name(Format f) { return f == Format::Json ? "ledger.jsonl" : "ledger.csv"; }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gibbslab::ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

Json specimen_json(const gibbslab::GasSpecimen& g) {
  Json j;
  j["species"] = g.species.tag;
  j["similarity"] = g.species.similarity;
  j["n"] = g.n;
  j["volume"] = g.volume;
  j["temperature"] = g.temperature;
  return j;
}

Json scenario_params(const fs::path& file) {
  const auto s = gibbslab::scenario_from_config(gibbslab::KeyValueFile::load(file));
  Json p;
  p["left"] = specimen_json(s.left);
  p["right"] = specimen_json(s.right);
  p["policy"] = std::string(gibbslab::to_string(s.policy));
  p["convention"] = std::string(gibbslab::to_string(s.convention));
  p["states_per_volume"] = s.states_per_volume;
  return p;
}

Json demon_params(const fs::path& file, std::optional<std::uint64_t> seed) {
  const auto rc = gibbslab::demon_config_from(gibbslab::KeyValueFile::load(file));
  const auto& c = rc.config;
  Json p;
  p["n_per_side"] = c.n_per_side;
  p["width"] = c.width;
  p["height"] = c.height;
  p["temperature"] = c.temperature;
  p["membrane_speed"] = c.membrane_speed;
  if (seed)
    p["seed"] = *seed;
  else if (rc.seed_given)
    p["seed"] = c.seed;
  p["thermal_walls"] = c.thermal_walls;
  p["quasistatic_factor"] = c.quasistatic_factor;
  p["mixing_time"] = c.mixing_time;
  p["species"] = c.left_species;
  p["speed_ladder"] = rc.speed_ladder;
  return p;
}

// Runs `params`, prints the report, writes manifest and ledger. Returns the exit status.
int execute(const std::string& sub, Json params, Format format) {
  if (gibbslab::app::is_stochastic(sub, params) && !params.contains("seed"))
    params["seed"] = std::uint64_t{std::random_device{}()} << 32 | std::random_device{}();
  const fs::path dir = output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream ledger;
  if (sub == "demon") {
    ledger.open(dir / ledger_name(format), std::ios::binary);
    if (!ledger) throw gibbslab::ConfigError("cannot write ledger in '" + dir.string() + "'");
  }
  const auto result = gibbslab::app::run(sub, params, format, ledger.is_open() ? &ledger : nullptr);
  std::cout << result.primary;
  const auto manifest = gibbslab::app::make_manifest(sub, params, format, result);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int rerun(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw gibbslab::ConfigError("cannot open manifest '" + manifest_path.string() + "'");
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const Json::exception& e) {
    throw gibbslab::ConfigError(std::string("manifest: ") + e.what());
  }
  const fs::path dir = output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto format = gibbslab::app::parse_format(manifest.value("format", std::string("json")));
  std::ofstream ledger;
  if (manifest.contains("ledger_checksum")) ledger.open(dir / ledger_name(format), std::ios::binary);
  const auto outcome = gibbslab::app::rerun(manifest, ledger.is_open() ? &ledger : nullptr);
  std::cout << outcome.result.primary;
  if (!outcome.matches) {
    std::cerr << gibbslab::app::render_error("reproducibility",
                                             "rerun output does not match the manifest checksums",
                                             0, "", format);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs mixing laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GIBBSLAB_VERSION);

  std::string format_name = "json";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::int64_t n = 0, x = 1, steps = 1000, phi_mode = 0, psi_mode = 1;
  std::string convention = "distinguishable", statistics = "bose", task, species = "A";
  double volume = 1.0, temperature = 1.0, c = 0.0, v1 = 1.0, v2 = 1.0;
  std::optional<std::uint64_t> seed;
  std::string file;

  auto* count = app.add_subcommand("count", "microstate count ln W");
  count->add_option("--n", n, "particles")->required();
  count->add_option("--x", x, "one-particle states")->required();
  count->add_option("--convention", convention, "distinguishable|corrected-boltzmann|bose|fermi");
  add_format(count);

  auto* mix = app.add_subcommand("mix", "mixing entropy of a scenario file");
  mix->add_option("scenario", file, "key = value scenario file")->required();
  add_format(mix);

  auto* thermo = app.add_subcommand("thermo", "thermodynamic entropies of one ideal-gas sample");
  thermo->add_option("--n", n)->required();
  thermo->add_option("--volume", volume);
  thermo->add_option("--temperature", temperature);
  thermo->add_option("--c", c, "entropy constant per particle");
  thermo->add_option("--species", species);
  add_format(thermo);

  auto* et = app.add_subcommand("et", "open-system binomial occupancy");
  et->add_option("--n", n)->required();
  et->add_option("--v1", v1);
  et->add_option("--v2", v2);
  add_format(et);

  auto* demon = app.add_subcommand("demon", "membrane un-mixing simulation");
  demon->add_option("config", file, "key = value demon config")->required();
  demon->add_option("--seed", seed);
  add_format(demon);

  auto* quantum = app.add_subcommand("quantum", "symmetrization checks");
  quantum->add_option("task", task, "enumerate|bookkeeping|reduced-dm|orthogonality")
      ->required()
      ->check(CLI::IsMember({"enumerate", "bookkeeping", "reduced-dm", "orthogonality"}));
  quantum->add_option("--n", n);
  quantum->add_option("--x", x);
  quantum->add_option("--statistics", statistics, "bose|fermi|distinguishable");
  quantum->add_option("--steps", steps);
  quantum->add_option("--phi", phi_mode, "mode index of phi (reduced-dm)");
  quantum->add_option("--psi", psi_mode, "mode index of psi (reduced-dm)");
  quantum->add_option("--seed", seed);
  add_format(quantum);

  auto* again = app.add_subcommand("rerun", "re-execute a manifest and compare checksums");
  again->add_option("manifest", file)->required();
  add_format(again);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const Format f = format_name == "csv" ? Format::Csv : Format::Json;
    std::cout << gibbslab::app::render_error("usage", e.what(), 0, "", f);
    return 2;
  }

  const Format format = gibbslab::app::parse_format(format_name);
  try {
    Json p;
    std::string sub;
    if (*count) {
      sub = "count";
      p = {{"n", n}, {"x", x}, {"convention", convention}};
    } else if (*mix) {
      sub = "mix";
      p = scenario_params(file);
    } else if (*thermo) {
      sub = "thermo";
      p = {{"species", species}, {"n", n}, {"volume", volume}, {"temperature", temperature}, {"c", c}};
    } else if (*et) {
      sub = "et";
      p = {{"n", n}, {"v1", v1}, {"v2", v2}};
    } else if (*demon) {
      sub = "demon";
      p = demon_params(file, seed);
    } else if (*quantum) {
      sub = "quantum";
      p["task"] = task;
      if (task == "enumerate") {
        p["n"] = n;
        p["x"] = x;
        p["statistics"] = statistics;
      } else if (task == "bookkeeping") {
        p["n"] = n;
        p["x"] = x;
      } else if (task == "reduced-dm") {
        p["x"] = quantum->count("--x") ? x : 2;
        p["phi_mode"] = phi_mode;
        p["psi_mode"] = psi_mode;
      } else {
        p["x"] = quantum->count("--x") ? x : 8;
        p["steps"] = steps;
        if (seed) p["seed"] = *seed;
      }
    } else {
      return rerun(file);
    }
    return execute(sub, p, format);
  } catch (const gibbslab::ConfigError& e) {
    std::cout << gibbslab::app::render_error(e.kind(), e.what(), e.line(), e.field(), format);
  } catch (const gibbslab::Error& e) {
    std::cout << gibbslab::app::render_error(e.kind(), e.what(), 0, "", format);
  } catch (const std::exception& e) {
    std::cout << gibbslab::app::render_error("internal", e.what(), 0, "", format);
  }
  return 2;
}
