#include "hburg/certificate.hpp"

#include "hburg/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hburg::certificate {

bool check_moment_thresholds(const model::ModelParams& params, double F0, double F1) noexcept {
  const auto th = model::moment_thresholds(params);
  return F0 > th.F0_min && F1 > th.F1_min;
}

std::optional<EpsInterval> epsilon_interval(const model::ModelParams& params, double G0, double F1) {
  if (!(G0 > 0.0) || !std::isfinite(G0)) {
    throw ParameterError("G0 must be positive");
  }
  if (!(F1 > 0.0) || !std::isfinite(F1)) {
    throw ParameterError("F1 must be positive");
  }
  const double c = params.c();
  const double L = params.L();
  const double L3 = L * L * L;
  const double inv_sqrt_g0 = 1.0 / std::sqrt(G0);

  const double lower = 4.0 * c * L * L * inv_sqrt_g0;
  // Positive root of (3/2)(mu/L^3) e^2 + G0^{-1/2} e - 3/4 = 0, cancellation-free form.
  const double quad = 1.5 * params.mu() / L3;
  const double root = 1.5 / (inv_sqrt_g0 + std::sqrt(inv_sqrt_g0 * inv_sqrt_g0 + 3.0 * quad));
  const double from_f1 = F1 * L3 * inv_sqrt_g0 * inv_sqrt_g0 * inv_sqrt_g0;

  EpsInterval out;
  out.lower = lower;
  out.upper = std::min(root, from_f1);
  out.upper_inclusive = root < from_f1;
  if (!(out.lower < out.upper)) {
    return std::nullopt;
  }
  return out;
}

namespace {

// G(t) = G0 / s^2 with s = sqrt(G0) G(t)^{-1/2} = 1 + sqrt(G0) (eps / 4c^3) [(t + a)^{-2} - a^{-2}], a = L / c.
// The bracket is rewritten as -t (t + 2a) / (a^2 (t + a)^2); s = 1 exactly at t = 0, so G(0) = G0.
double scaled_inverse_sqrt_g(double t, double eps, double G0, const model::ModelParams& params) {
  const double c = params.c();
  const double a = params.L() / c;
  const double bracket = -t * (t + 2.0 * a) / (a * a * (t + a) * (t + a));
  return 1.0 + std::sqrt(G0) * (eps / (4.0 * c * c * c)) * bracket;
}

} // namespace

double g_closed_form(double t, double eps, double G0, const model::ModelParams& params) {
  if (!(t >= 0.0)) {
    throw DomainError("g_closed_form requires t >= 0");
  }
  const double s = scaled_inverse_sqrt_g(t, eps, G0, params);
  if (!(s > 0.0)) {
    throw DomainError("g_closed_form evaluated at or beyond the blow-up time");
  }
  return G0 / (s * s);
}

std::optional<double> t_star(double eps, double G0, const model::ModelParams& params) noexcept {
  const double c = params.c();
  const double L = params.L();
  if (!(eps > 0.0) || !(G0 > 0.0) || !(G0 > 16.0 * c * c * L * L * L * L / (eps * eps))) {
    return std::nullopt;
  }
  const double base = (c / L) * (c / L) - 4.0 * c * c * c / (eps * std::sqrt(G0));
  if (!(base > 0.0)) {
    return std::nullopt;
  }
  return 1.0 / std::sqrt(base) - L / c;
}

OracleSamples aux_ode_oracle(double eps, double G0, const model::ModelParams& params,
                             std::span<const double> sample_times) {
  namespace ode = boost::numeric::odeint;
  using State = double;

  const double c = params.c();
  const double L = params.L();
  auto rhs = [&](const State& g, State& dg, double t) {
    const double r = c * t + L;
    dg = eps * std::pow(std::max(g, 0.0), 1.5) / (r * r * r);
  };

  auto stepper = ode::make_controlled(0.0, 1e-10, ode::runge_kutta_dopri5<State>());

  OracleSamples out;
  State g = G0;
  double t = 0.0;
  double dt = 1e-6;
  for (const double target : sample_times) {
    while (t < target) {
      double step = std::min(dt, target - t);
      const double before = t;
      const auto result = stepper.try_step(rhs, g, t, step);
      dt = step;
      if (!std::isfinite(g) || g > 1e300 || (result != ode::success && step < 1e-14 * std::max(1.0, before))) {
        out.diverged = true;
        out.t_diverged = t;
        return out;
      }
    }
    out.t.push_back(target);
    out.G.push_back(g);
  }
  return out;
}

Certificate certify(const model::ModelParams& params, double F0, double F1, std::optional<double> eps) {
  Certificate cert;
  cert.F0 = F0;
  cert.F1 = F1;
  cert.G0 = F0;
  cert.thresholds_met = check_moment_thresholds(params, F0, F1);
  if (F0 > 0.0 && F1 > 0.0 && std::isfinite(F0) && std::isfinite(F1)) {
    cert.eps_interval = epsilon_interval(params, F0, F1);
  }
  if (!cert.eps_interval) {
    if (eps) {
      throw ConfigError("epsilon given but the initial moments admit no feasible epsilon");
    }
    return cert;
  }
  const EpsInterval& win = *cert.eps_interval;
  if (eps) {
    if (!win.contains(*eps)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "epsilon " << *eps << " outside the feasible window (" << win.lower << ", " << win.upper
          << (win.upper_inclusive ? "]" : ")");
      throw ConfigError(msg.str());
    }
    cert.eps_chosen = *eps;
  } else {
    cert.eps_chosen = win.midpoint();
  }
  cert.T_star = t_star(*cert.eps_chosen, cert.G0, params);
  cert.T_star_tightest = t_star(win.upper, cert.G0, params);
  return cert;
}

std::optional<double> lower_bound_at(const Certificate& cert, const model::ModelParams& params, double t) {
  if (!cert.certified() || !cert.T_star || !(t < *cert.T_star) || t < 0.0) {
    return std::nullopt;
  }
  const double s = scaled_inverse_sqrt_g(t, *cert.eps_chosen, cert.G0, params);
  if (!(s > 0.0)) {
    return std::nullopt;
  }
  return cert.G0 / (s * s);
}

ComparisonMargin comparison_check(std::span<const diagnostics::DiagnosticsRecord> records, const Certificate& cert,
                                  const model::ModelParams& params) {
  if (!cert.certified()) {
    throw PreconditionError("comparison_check requires a certificate with a feasible epsilon");
  }
  ComparisonMargin m;
  for (const auto& r : records) {
    const auto G = lower_bound_at(cert, params, r.t);
    if (!G) {
      continue;
    }
    const double gap = r.F - *G;
    const double normalized = gap / (1.0 + *G);
    if (m.checked == 0) {
      m.worst = gap;
      m.worst_normalized = normalized;
    } else {
      m.worst = std::min(m.worst, gap);
      m.worst_normalized = std::min(m.worst_normalized, normalized);
    }
    ++m.checked;
  }
  return m;
}

} // namespace hburg::certificate
