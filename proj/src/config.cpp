#include "gibbslab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gibbslab/errors.hpp"

namespace gibbslab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const KeyValueFile::Entry& e) {
  T out{};
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("field '" + e.key + "': cannot parse '" + e.value + "' as a number", e.line,
                      e.key);
  return out;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile kv;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("field '" + key + "' has no value", line_no, key);
    if (kv.find(key)) throw ConfigError("duplicate field '" + key + "'", line_no, key);
    kv.entries_.push_back({key, value, line_no});
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const KeyValueFile::Entry* KeyValueFile::find(std::string_view key) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

std::string KeyValueFile::get_string(std::string_view key, std::optional<std::string> fallback) const {
  if (const auto* e = find(key)) return e->value;
  if (fallback) return *fallback;
  throw ConfigError("missing required field '" + std::string(key) + "'", 0, std::string(key));
}

double KeyValueFile::get_double(std::string_view key, std::optional<double> fallback) const {
  if (const auto* e = find(key)) return parse_number<double>(*e);
  if (fallback) return *fallback;
  throw ConfigError("missing required field '" + std::string(key) + "'", 0, std::string(key));
}

std::int64_t KeyValueFile::get_int(std::string_view key, std::optional<std::int64_t> fallback) const {
  if (const auto* e = find(key)) return parse_number<std::int64_t>(*e);
  if (fallback) return *fallback;
  throw ConfigError("missing required field '" + std::string(key) + "'", 0, std::string(key));
}

bool KeyValueFile::get_bool(std::string_view key, std::optional<bool> fallback) const {
  if (const auto* e = find(key)) {
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    throw ConfigError("field '" + e->key + "': expected true/false", e->line, e->key);
  }
  if (fallback) return *fallback;
  throw ConfigError("missing required field '" + std::string(key) + "'", 0, std::string(key));
}

std::vector<double> KeyValueFile::get_double_list(std::string_view key) const {
  std::vector<double> out;
  const auto* e = find(key);
  if (!e) return out;
  std::string_view rest = e->value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    Entry item{e->key, std::string(trim(rest.substr(0, comma))), e->line};
    out.push_back(parse_number<double>(item));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return out;
}

void KeyValueFile::require_known(const std::vector<std::string_view>& allowed) const {
  for (const auto& e : entries_)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      throw ConfigError("unknown field '" + e.key + "'", e.line, e.key);
}

namespace {

GasSpecimen specimen_from(const KeyValueFile& kv, const std::string& side) {
  GasSpecimen g;
  g.species.tag = kv.get_string(side + ".species");
  g.species.similarity = kv.get_double(side + ".similarity", 0.0);
  g.n = kv.get_int(side + ".n");
  g.volume = kv.get_double(side + ".volume");
  g.temperature = kv.get_double(side + ".temperature");
  try {
    g.validate();
  } catch (const DomainError& err) {
    const auto* e = kv.find(side + ".n");
    throw ConfigError(side + ": " + err.what(), e ? e->line : 0, side);
  }
  return g;
}

// Re-throws library errors from enum parsing as ConfigErrors pointing at the field.
template <typename F>
auto field_value(const KeyValueFile& kv, std::string_view key, const std::string& fallback, F parse) {
  const std::string raw = kv.get_string(key, fallback);
  try {
    return parse(raw);
  } catch (const DomainError& err) {
    const auto* e = kv.find(key);
    throw ConfigError(err.what(), e ? e->line : 0, std::string(key));
  }
}

}  // namespace

MixingScenario scenario_from_config(const KeyValueFile& kv) {
  kv.require_known({"left.species", "left.similarity", "left.n", "left.volume", "left.temperature",
                    "right.species", "right.similarity", "right.n", "right.volume",
                    "right.temperature", "policy", "convention", "states_per_volume"});
  MixingScenario s;
  s.left = specimen_from(kv, "left");
  s.right = specimen_from(kv, "right");
  s.policy = field_value(kv, "policy", "by-species",
                         [](const std::string& v) { return parse_discrimination_policy(v); });
  s.convention = field_value(kv, "convention", "distinguishable",
                             [](const std::string& v) { return parse_counting_convention(v); });
  s.states_per_volume = kv.get_double("states_per_volume", 1.0);
  return s;
}

DemonRunConfig demon_config_from(const KeyValueFile& kv) {
  kv.require_known({"n_per_side", "width", "height", "temperature", "membrane_speed", "seed",
                    "thermal_walls", "quasistatic_factor", "mixing_time", "species",
                    "speed_ladder"});
  DemonRunConfig out;
  auto& c = out.config;
  c.n_per_side = kv.get_int("n_per_side");
  c.width = kv.get_double("width", 1.0);
  c.height = kv.get_double("height", 1.0);
  c.temperature = kv.get_double("temperature", 1.0);
  c.membrane_speed = kv.get_double("membrane_speed", 0.005 * std::sqrt(c.temperature));
  if (const auto* e = kv.find("seed")) {
    out.seed_given = true;
    c.seed = parse_number<std::uint64_t>(*e);
  }
  c.thermal_walls = kv.get_bool("thermal_walls", true);
  c.quasistatic_factor = kv.get_double("quasistatic_factor", 0.01);
  c.mixing_time = kv.get_double("mixing_time", 0.0);
  c.left_species = c.right_species = kv.get_string("species", std::string("A"));
  out.speed_ladder = kv.get_double_list("speed_ladder");
  try {
    c.validate();
  } catch (ConfigError& err) {
    const auto* e = kv.find(err.field());
    throw ConfigError(err.what(), e ? e->line : 0, err.field());
  }
  return out;
}

}  // namespace gibbslab
