#include "hburg/initial_data.hpp"

#include "hburg/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace hburg::initial_data {

ProfileFamily parse_family(std::string_view name) {
  if (name == "odd_bump") {
    return ProfileFamily::OddBump;
  }
  throw ConfigError("unknown profile family '" + std::string(name) + "' (valid: odd_bump)");
}

std::string_view family_name(ProfileFamily family) noexcept {
  switch (family) {
  case ProfileFamily::OddBump:
    return "odd_bump";
  }
  return "odd_bump";
}

double bump_profile(double x, double L) noexcept {
  const double s = x / L;
  const double s2 = s * s;
  if (!(s2 < 1.0)) {
    return 0.0;
  }
  return x * std::exp(1.0 / (s2 - 1.0));
}

double bump_peak(double L) noexcept {
  const double sqrt3 = std::sqrt(3.0);
  return L * std::sqrt(2.0 - sqrt3) * std::exp(-(1.0 + sqrt3) / 2.0);
}

namespace {

std::vector<double> sample_profile(ProfileFamily family, double L, const Grid& grid, double amplitude) {
  std::vector<double> out(grid.size(), 0.0);
  switch (family) {
  case ProfileFamily::OddBump:
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      out[i] = amplitude * bump_profile(grid.x(i), L);
    }
    break;
  }
  return out;
}

} // namespace

Amplitudes calibrate(ProfileFamily family, double L, const Grid& grid, double F0_target, double F1_target) {
  if (grid.xmin() > -L || grid.xmax() < L) {
    throw DomainError("calibration grid does not cover the support [-L, L]");
  }
  const std::vector<double> psi = sample_profile(family, L, grid, 1.0);
  const double m1 = trapezoid_dot(grid, grid.nodes(), psi);
  if (m1 == 0.0 || !std::isfinite(m1)) {
    throw DomainError("calibration failed: discrete first moment of the profile vanishes (grid too coarse)");
  }
  return {F0_target / m1, F1_target / m1};
}

GridState sample_initial_state(const model::ModelParams& params, const Grid& grid, const ProfileSpec& profile) {
  if (!(profile.L > 0.0) || profile.L > params.L()) {
    throw DomainError("profile support must lie inside [-L, L] of the model");
  }
  if (!(grid.xmin() < -params.L()) || !(grid.xmax() > params.L())) {
    throw DomainError("grid must strictly contain the initial support [-L, L]");
  }
  GridState state{grid, 0.0, {}, {}};
  // Scale after sampling so both fields share the exact same shape samples.
  const std::vector<double> psi = sample_profile(profile.family, profile.L, grid, 1.0);
  state.v.resize(psi.size());
  state.w.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    state.v[i] = profile.a * psi[i];
    state.w[i] = profile.b * psi[i];
  }
  return state;
}

} // namespace hburg::initial_data
