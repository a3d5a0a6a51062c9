#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "crep/io.hpp"

namespace crep {

enum ExitCode : int {
  kExitPass = 0,
  kExitViolated = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Scalar settings given on the command line; each one beats the config file.
struct FlagOverrides {
  std::optional<Seed> seed;
  std::optional<std::string> scenario;
  std::optional<std::filesystem::path> out_dir;
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
};

struct RunConfig {
  std::string verb;
  /// The whole config file ({} when none was given).
  Json file = Json::object();
  Seed seed = 1;
  std::optional<std::string> scenario;
  std::filesystem::path out_dir = "crep_out";
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
};

/// flags > file > defaults. Throws ConfigError on ill-typed scalar fields or a
/// zero sample count.
RunConfig resolve_config(const std::string& verb, const Json& file, const FlagOverrides& flags);

int cmd_metric(const RunConfig& cfg, std::ostream& log);
int cmd_modulus(const RunConfig& cfg, std::ostream& log);
int cmd_duality(const RunConfig& cfg, std::ostream& log);
int cmd_transport(const RunConfig& cfg, std::ostream& log);
int cmd_gallery(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.verb and maps exceptions to exit codes: numerical failures
/// (SolverFailure, NonFinite) give 3, every other library or config error 2.
int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace crep
