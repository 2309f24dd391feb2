#pragma once

#include <stdexcept>
#include <string>

namespace gazepinch {

// Frame or trace timestamps went backwards (or repeated).
struct ClockError : std::runtime_error {
  explicit ClockError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration value or inconsistent parameter set.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (trace line, scenario, CSV cell).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Trace schema version this build does not understand.
struct VersionError : std::runtime_error {
  explicit VersionError(const std::string& what) : std::runtime_error(what) {}
};

// CSV column layout does not match the expected schema tag.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Event log lacks the TrialStarted/TrialEnded bracket needed for metrics.
struct IncompleteTrial : std::runtime_error {
  explicit IncompleteTrial(const std::string& what) : std::runtime_error(what) {}
};

// Block aggregation over zero valid trials.
struct EmptyBlock : std::runtime_error {
  explicit EmptyBlock(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure (missing input, unwritable output).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Artifact digest does not match the configuration that claims to describe it.
struct DigestMismatch : std::runtime_error {
  explicit DigestMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gazepinch
