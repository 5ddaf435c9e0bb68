#include "hburg/model.hpp"

#include "hburg/error.hpp"

#include <cmath>
#include <string>

namespace hburg::model {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
  if (!(value > 0.0)) {
    throw ParameterError(std::string(name) + " must be positive");
  }
}

} // namespace

double ModelParams::c() const noexcept { return std::sqrt(nu_ / mu_); }

ModelParams validate_params(double mu, double nu, double L) {
  require_positive(mu, "mu");
  require_positive(nu, "nu");
  require_positive(L, "L");
  return ModelParams(mu, nu, L);
}

WaveSpeed derive_wave_speed(const ModelParams& params) noexcept { return {params.c()}; }

MomentThresholds moment_thresholds(const ModelParams& params) noexcept {
  const double c = params.c();
  const double L = params.L();
  const double tail = L + 6.0 * c * params.mu();
  return {16.0 / 3.0 * c * L * tail, 64.0 / 3.0 * c * c * tail};
}

} // namespace hburg::model
