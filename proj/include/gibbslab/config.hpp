#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gibbslab/demon.hpp"
#include "gibbslab/mixing.hpp"

namespace gibbslab {

/// Flat `key = value` file. `#` starts a comment; blank lines are ignored;
/// keys are unique. Errors carry the 1-based line number.
class KeyValueFile {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(std::string_view key) const;

  std::string get_string(std::string_view key, std::optional<std::string> fallback = {}) const;
  double get_double(std::string_view key, std::optional<double> fallback = {}) const;
  std::int64_t get_int(std::string_view key, std::optional<std::int64_t> fallback = {}) const;
  bool get_bool(std::string_view key, std::optional<bool> fallback = {}) const;
  std::vector<double> get_double_list(std::string_view key) const;

  /// Throws ConfigError naming the first key not in `allowed`.
  void require_known(const std::vector<std::string_view>& allowed) const;

 private:
  std::vector<Entry> entries_;
};

/// Scenario schema:
///   left.species, left.similarity (opt), left.n, left.volume, left.temperature
///   right.* (same), policy, convention (opt, distinguishable),
///   states_per_volume (opt, 1)
MixingScenario scenario_from_config(const KeyValueFile& kv);

/// Demon schema: n_per_side, width, height, temperature, membrane_speed,
/// seed (opt), thermal_walls, quasistatic_factor, mixing_time, species,
/// speed_ladder (opt, comma-separated multiples of sqrt(T)).
struct DemonRunConfig {
  demon::DemonConfig config;
  bool seed_given = false;
  std::vector<double> speed_ladder;  ///< multiples of sqrt(T)
};
DemonRunConfig demon_config_from(const KeyValueFile& kv);

}  // namespace gibbslab
