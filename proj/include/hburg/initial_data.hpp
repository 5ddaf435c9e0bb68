#pragma once

#include "hburg/grid.hpp"
#include "hburg/model.hpp"

#include <string_view>

namespace hburg::initial_data {

enum class ProfileFamily { OddBump };

ProfileFamily parse_family(std::string_view name);
std::string_view family_name(ProfileFamily family) noexcept;

/// v0 = a * psi, v1 = b * psi with psi supported in [-L, L].
struct ProfileSpec {
  ProfileFamily family = ProfileFamily::OddBump;
  double a = 0.0;
  double b = 0.0;
  double L = 1.0;
};

/// psi(x) = x exp(1 / ((x/L)^2 - 1)) for |x| < L, 0 otherwise.
double bump_profile(double x, double L) noexcept;

/// max |psi| = L sqrt(2 - sqrt 3) exp(-(1 + sqrt 3) / 2), attained at |x| = L sqrt(2 - sqrt 3).
double bump_peak(double L) noexcept;

struct Amplitudes {
  double a;
  double b;
};

/// Amplitudes whose trapezoidal first moments on `grid` equal the targets.
/// Throws DomainError when the grid does not cover [-L, L] or the discrete moment of psi vanishes.
Amplitudes calibrate(ProfileFamily family, double L, const Grid& grid, double F0_target, double F1_target);

/// Samples (a psi, b psi) at t = 0. Throws DomainError unless xmin < -L and xmax > L.
GridState sample_initial_state(const model::ModelParams& params, const Grid& grid, const ProfileSpec& profile);

} // namespace hburg::initial_data
