#pragma once

#include "hburg/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hburg::cli {

/// One checked property. `criterion` numbers the acceptance criterion it
/// evidences (0 for supporting invariants).
struct Assertion {
  int criterion = 0;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string preset;
  std::vector<Assertion> assertions;

  bool passed() const noexcept;
};

const std::vector<std::string_view>& preset_names();

/// Throws ConfigError listing valid presets for an unknown name.
SuiteResult run_suite(std::string_view preset);

/// Representative run configuration of a simulation preset (for re-runs and determinism checks).
/// Throws ConfigError for unknown names and for presets without a simulation.
RunConfig preset_config(std::string_view preset);

// Building blocks shared with the acceptance suite.
RunConfig propagation_config();
RunConfig cone_config();
RunConfig identity_config(std::size_t n);
RunConfig blowup_config(std::size_t n);
RunConfig smalldata_config();

} // namespace hburg::cli
