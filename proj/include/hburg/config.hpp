#pragma once

#include "hburg/initial_data.hpp"

#include "json.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

namespace hburg::cli {

/// Initial data either by target moments (F0, F1) or by raw amplitudes (a, b).
struct InitialCondition {
  initial_data::ProfileFamily family = initial_data::ProfileFamily::OddBump;
  std::optional<double> F0_target;
  std::optional<double> F1_target;
  std::optional<double> a;
  std::optional<double> b;

  bool by_moments() const noexcept { return F0_target.has_value(); }
};

struct OutputSpec {
  std::string directory = "hyperburg_out";
  bool emit_csv = true;
  bool emit_report = true;
};

struct RunConfig {
  double mu = 1.0;
  double nu = 1.0;
  double L = 1.0;
  double xmin = -4.0;
  double xmax = 4.0;
  std::size_t n = 1024;
  double cfl = 0.4;
  double t_end = 1.0;
  /// <= 0 selects the default 1e6 max(1, sup |v0|).
  double blowup_threshold = 0.0;
  std::size_t record_stride = 1;
  InitialCondition ic;
  /// Comparison constant for the certificate; window midpoint when absent.
  std::optional<double> epsilon;
  OutputSpec output;
};

/// Strict parse: unknown keys, wrong types and inconsistent ic blocks throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully explicit echo; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

/// Parameter, grid, margin and stride checks. Throws ParameterError / ConfigError.
void validate(const RunConfig& config);

/// Relative directories resolve against $HYPERBURG_OUT when it is set.
std::filesystem::path resolve_output_dir(const std::string& directory);

} // namespace hburg::cli
