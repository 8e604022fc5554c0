#pragma once

#include <stdexcept>
#include <string>

namespace gibbslab {

/// Base for every error raised by the library. `kind()` is the stable
/// machine-readable tag emitted in CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Scenario precondition violated (e.g. unequal P or T across a partition).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

/// Requested state space is empty (Fermi with N > X).
struct InfeasibleStateError : Error {
  explicit InfeasibleStateError(const std::string& what) : Error("infeasible_state", what) {}
};

/// Exhaustive enumeration requested beyond the supported bounds.
struct SizeLimitError : Error {
  explicit SizeLimitError(const std::string& what) : Error("size_limit", what) {}
};

/// Membrane moving too fast relative to the thermal speed.
struct QuasiStaticityError : Error {
  explicit QuasiStaticityError(const std::string& what) : Error("quasi_staticity", what) {}
};

/// Malformed configuration; carries the offending line (1-based, 0 if none) and field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : Error("config", what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace gibbslab
