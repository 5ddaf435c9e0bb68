#pragma once

namespace hburg::model {

/// Physical configuration of mu v_tt + v_t + v v_x = nu v_xx with data supported in [-L, L].
///
/// Only obtainable through validate_params(), so every instance satisfies
/// mu > 0, nu > 0, L > 0 with all three finite.
class ModelParams {
public:
  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }
  double L() const noexcept { return L_; }

  /// Propagation speed sqrt(nu / mu).
  double c() const noexcept;

  friend ModelParams validate_params(double mu, double nu, double L);

private:
  ModelParams(double mu, double nu, double L) : mu_(mu), nu_(nu), L_(L) {}
  double mu_;
  double nu_;
  double L_;
};

struct WaveSpeed {
  double c;
};

/// Throws ParameterError naming the first non-positive or non-finite argument.
ModelParams validate_params(double mu, double nu, double L);

WaveSpeed derive_wave_speed(const ModelParams& params) noexcept;

/// Lower bounds on F(0) and F'(0) that guarantee a finite classical lifespan.
struct MomentThresholds {
  double F0_min;
  double F1_min;
};

MomentThresholds moment_thresholds(const ModelParams& params) noexcept;

} // namespace hburg::model
