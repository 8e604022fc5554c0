#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gibbslab::app {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };
Format parse_format(std::string_view s);
std::string_view to_string(Format f);

/// Records of one subcommand invocation. Entropies are in units of k and every
/// record says so in a "units" field.
struct Report {
  std::string subcommand;
  std::vector<Json> records;
};

/// JSON: one object {"subcommand", "version", "units", "records"} plus newline.
/// CSV: header row (union of record keys, first-seen order) then one row per record.
std::string render(const Report& report, Format format);

/// Machine-readable error record (same format switch).
std::string render_error(std::string_view kind, std::string_view message, int line,
                         std::string_view field, Format format);

struct RunResult {
  Report report;
  std::string primary;  ///< rendered report
  bool has_ledger = false;
  std::uint64_t ledger_checksum = 0;
  std::int64_t ledger_records = 0;
};

/// Runs a subcommand from a fully resolved parameter object. `ledger`, when
/// given, receives the demon event stream (one record per line, CSV with header
/// or JSON lines, following `format`).
RunResult run(std::string_view subcommand, const Json& params, Format format,
              std::ostream* ledger = nullptr);

/// {"subcommand", "parameters", "seed", "version", "format", "output_checksum", ...}.
Json make_manifest(std::string_view subcommand, const Json& params, Format format,
                   const RunResult& result);

/// Re-executes a manifest. `matches` is true iff the primary output checksum
/// (and ledger checksum, if any) equal the recorded ones.
struct RerunOutcome {
  RunResult result;
  bool matches = false;
};
RerunOutcome rerun(const Json& manifest, std::ostream* ledger = nullptr);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t v);

/// Subcommands that draw random numbers and therefore take a seed.
bool is_stochastic(std::string_view subcommand, const Json& params);

}  // namespace gibbslab::app
