#pragma once

// Finite-lifespan certificate for large data: the moment thresholds, the
// window of admissible comparison constants eps, the closed-form minorant
// G(t) with its blow-up time T*, and the F >= G comparison along a run.

#include "hburg/diagnostics.hpp"
#include "hburg/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hburg::certificate {

/// Strict: F0 > (16/3) c L (L + 6 c mu) and F1 > (64/3) c^2 (L + 6 c mu).
bool check_moment_thresholds(const model::ModelParams& params, double F0, double F1) noexcept;

/// Feasible eps window (lower, upper]; `upper_inclusive` is false when the strict bound from F1 binds.
struct EpsInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_inclusive = true;

  bool contains(double eps) const noexcept {
    return eps > lower && (upper_inclusive ? eps <= upper : eps < upper);
  }
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
};

/// The eps satisfying jointly
///   G0 > 16 c^2 L^4 / eps^2,
///   eps G0^{-1/2} + (3/2)(mu / L^3) eps^2 <= 3/4,
///   eps L^{-3} G0^{3/2} < F1.
/// Returns nullopt when empty. Throws ParameterError unless G0 > 0 and F1 > 0.
std::optional<EpsInterval> epsilon_interval(const model::ModelParams& params, double G0, double F1);

/// G(t) solving G' = eps (c t + L)^{-3} G^{3/2}, G(0) = G0.
/// Throws DomainError for t < 0 or t at/after the blow-up time.
double g_closed_form(double t, double eps, double G0, const model::ModelParams& params);

/// Blow-up time of G, absent unless G0 > 16 c^2 L^4 / eps^2 strictly.
std::optional<double> t_star(double eps, double G0, const model::ModelParams& params) noexcept;

struct OracleSamples {
  std::vector<double> t;
  std::vector<double> G;
  /// True when the integrator could not reach the last requested time.
  bool diverged = false;
  double t_diverged = 0.0;
};

/// Adaptive Dormand-Prince integration of the same scalar IVP (relative tolerance 1e-10),
/// sampled at the given nondecreasing times >= 0.
OracleSamples aux_ode_oracle(double eps, double G0, const model::ModelParams& params,
                             std::span<const double> sample_times);

struct Certificate {
  double F0 = 0.0;
  double F1 = 0.0;
  bool thresholds_met = false;
  std::optional<EpsInterval> eps_interval;
  std::optional<double> eps_chosen;
  double G0 = 0.0;
  std::optional<double> T_star;
  /// T* at the upper end of the window (tightest available bound).
  std::optional<double> T_star_tightest;

  bool certified() const noexcept { return eps_interval.has_value(); }
};

/// Builds the certificate for initial moments (F0, F1). eps defaults to the window
/// midpoint; an explicit eps must lie inside the window (ConfigError otherwise).
Certificate certify(const model::ModelParams& params, double F0, double F1,
                    std::optional<double> eps = std::nullopt);

/// G(t) of a certified run, nullopt when uncertified or t >= T*.
std::optional<double> lower_bound_at(const Certificate& cert, const model::ModelParams& params, double t);

struct ComparisonMargin {
  double worst = 0.0;            // min F(t) - G(t)
  double worst_normalized = 0.0; // min (F(t) - G(t)) / (1 + G(t))
  std::size_t checked = 0;
};

/// Over records with t < T*. Throws PreconditionError for an uncertified run.
ComparisonMargin comparison_check(std::span<const diagnostics::DiagnosticsRecord> records, const Certificate& cert,
                                  const model::ModelParams& params);

} // namespace hburg::certificate
