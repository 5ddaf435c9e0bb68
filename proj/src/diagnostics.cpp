#include "hburg/diagnostics.hpp"

#include "hburg/error.hpp"
#include "hburg/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hburg::diagnostics {

namespace {

// Spatial and PDE-reconstructed time derivatives used by E1..E3 and the Sobolev integrands.
struct DerivedFields {
  std::vector<double> vx, vxx, vxxx;
  std::vector<double> vtt, vttt;
  std::vector<double> vxt, vxxt, vxtt;

  DerivedFields(const GridState& s, const model::ModelParams& p) {
    const auto& k = kernels::active();
    const std::size_t n = s.v.size();
    const double dx = s.grid.dx();
    const double inv_2dx = 1.0 / (2.0 * dx);
    const double inv_dx2 = 1.0 / (dx * dx);
    const kernels::WaveCoeffs coeffs{p.nu(), 1.0 / p.mu(), inv_dx2, inv_2dx};
    std::vector<double> flux(n);
    vx.resize(n);
    vxx.resize(n);
    vxxx.resize(n);
    vtt.resize(n);
    vttt.resize(n);
    vxt.resize(n);
    vxxt.resize(n);
    vxtt.resize(n);

    k.diff1(s.v, inv_2dx, vx);
    k.diff2(s.v, inv_dx2, vxx);
    k.diff1(vxx, inv_2dx, vxxx);
    k.diff1(s.w, inv_2dx, vxt);
    k.diff2(s.w, inv_dx2, vxxt);

    // v_tt = (nu v_xx - (v^2/2)_x - v_t) / mu
    k.half_square(s.v, flux);
    k.wave_accel(coeffs, s.v, flux, s.w, vtt);
    // v_ttt = (nu w_xx - (v w)_x - v_tt) / mu
    k.product(s.v, s.w, flux);
    k.wave_accel(coeffs, s.w, flux, vtt, vttt);
    k.diff1(vtt, inv_2dx, vxtt);
  }
};

double sq(double x) { return x * x; }

} // namespace

double Support::extent() const noexcept {
  return empty ? 0.0 : std::max(std::fabs(left), std::fabs(right));
}

double support_threshold(double sup) noexcept { return 1e-12 * (1.0 + sup); }

double moment_F(const GridState& state) { return trapezoid_dot(state.grid, state.grid.nodes(), state.v); }

double moment_Fprime(const GridState& state) { return trapezoid_dot(state.grid, state.grid.nodes(), state.w); }

double energy(const GridState& state, const model::ModelParams& params, int order) {
  if (order < 1 || order > 3) {
    throw PreconditionError("energy order must be 1, 2 or 3");
  }
  const Grid& g = state.grid;
  const double c2 = sq(params.c());
  if (order == 1) {
    std::vector<double> vx(state.v.size());
    kernels::active().diff1(state.v, 1.0 / (2.0 * g.dx()), vx);
    return 0.5 * (trapezoid_dot(g, state.w, state.w) + c2 * trapezoid_dot(g, vx, vx));
  }
  const DerivedFields d(state, params);
  if (order == 2) {
    return 0.5 * (trapezoid_dot(g, d.vtt, d.vtt) + c2 * c2 * trapezoid_dot(g, d.vxx, d.vxx));
  }
  return 0.5 * (trapezoid_dot(g, d.vttt, d.vttt) + c2 * c2 * c2 * trapezoid_dot(g, d.vxxx, d.vxxx));
}

double sup_norm(const GridState& state) { return kernels::active().max_abs(state.v); }

Support support_interval(const GridState& state, double threshold) {
  const std::size_t n = state.v.size();
  auto above = [&](std::size_t i) { return std::fabs(state.v[i]) > threshold || std::fabs(state.w[i]) > threshold; };
  std::size_t lo = 0;
  while (lo < n && !above(lo)) {
    ++lo;
  }
  if (lo == n) {
    return {};
  }
  std::size_t hi = n - 1;
  while (!above(hi)) {
    --hi;
  }
  return {state.grid.x(lo), state.grid.x(hi), false};
}

double schwartz_gap(const GridState& state, const model::ModelParams& params) {
  const double F = moment_F(state);
  const double radius = params.L() + params.c() * state.t;
  const double int_v2 = trapezoid_dot(state.grid, state.v, state.v);
  return 2.0 / 3.0 * radius * radius * radius * int_v2 - F * F;
}

DiagnosticsRecord evaluate(const GridState& state, const model::ModelParams& params) {
  const Grid& g = state.grid;
  const double c2 = sq(params.c());
  const DerivedFields d(state, params);

  DiagnosticsRecord r;
  r.t = state.t;
  r.F = moment_F(state);
  r.Fprime = moment_Fprime(state);
  r.E1 = 0.5 * (trapezoid_dot(g, state.w, state.w) + c2 * trapezoid_dot(g, d.vx, d.vx));
  r.E2 = 0.5 * (trapezoid_dot(g, d.vtt, d.vtt) + c2 * c2 * trapezoid_dot(g, d.vxx, d.vxx));
  r.E3 = 0.5 * (trapezoid_dot(g, d.vttt, d.vttt) + c2 * c2 * c2 * trapezoid_dot(g, d.vxxx, d.vxxx));
  r.sup_norm = sup_norm(state);
  r.support = support_interval(state, support_threshold(r.sup_norm));
  const double int_v2 = trapezoid_dot(g, state.v, state.v);
  r.half_int_v2 = 0.5 * int_v2;
  const double radius = params.L() + params.c() * state.t;
  r.schwartz_gap = 2.0 / 3.0 * radius * radius * radius * int_v2 - r.F * r.F;
  r.int_vxt2 = trapezoid_dot(g, d.vxt, d.vxt);
  r.int_vxtt2 = trapezoid_dot(g, d.vxtt, d.vxtt);
  r.int_vxxt2 = trapezoid_dot(g, d.vxxt, d.vxxt);
  return r;
}

double h2_integrand(const DiagnosticsRecord& r, const model::ModelParams& params) noexcept {
  const double mu = params.mu();
  const double mu2 = mu * mu;
  const double c2 = sq(params.c());
  const double second = 2.0 * r.E2 + c2 * r.int_vxt2;
  const double first = 2.0 * r.E1;
  return mu2 * mu2 * second + mu2 * first + 2.0 * r.half_int_v2;
}

double h3_integrand(const DiagnosticsRecord& r, const model::ModelParams& params) noexcept {
  const double mu = params.mu();
  const double mu2 = mu * mu;
  const double c2 = sq(params.c());
  const double third = 2.0 * r.E3 + c2 * r.int_vxtt2 + c2 * c2 * r.int_vxxt2;
  return h2_integrand(r, params) + mu2 * mu2 * mu2 * third;
}

void accumulate_sobolev(std::span<DiagnosticsRecord> records, const model::ModelParams& params) {
  double acc2 = 0.0;
  double acc3 = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (k > 0) {
      const double h = records[k].t - records[k - 1].t;
      acc2 += 0.5 * h * (h2_integrand(records[k - 1], params) + h2_integrand(records[k], params));
      acc3 += 0.5 * h * (h3_integrand(records[k - 1], params) + h3_integrand(records[k], params));
    }
    records[k].sobolev_H2_accum = std::sqrt(acc2);
    records[k].sobolev_H3_accum = std::sqrt(acc3);
  }
}

double identity_residual(std::span<const DiagnosticsRecord> records, const model::ModelParams& params) {
  if (records.size() < 3) {
    throw PreconditionError("identity_residual needs at least 3 records");
  }
  double worst = 0.0;
  bool any = false;
  for (std::size_t k = 1; k + 1 < records.size(); ++k) {
    const double h_lo = records[k].t - records[k - 1].t;
    const double h_hi = records[k + 1].t - records[k].t;
    if (std::fabs(h_hi - h_lo) > 1e-9 * std::max(h_lo, h_hi)) {
      continue;
    }
    any = true;
    const double h = 0.5 * (h_lo + h_hi);
    const double Fp = (records[k + 1].F - records[k - 1].F) / (2.0 * h);
    const double Fpp = (records[k + 1].F - 2.0 * records[k].F + records[k - 1].F) / (h * h);
    worst = std::max(worst, std::fabs(params.mu() * Fpp + Fp - records[k].half_int_v2));
  }
  if (!any) {
    throw PreconditionError("identity_residual found no uniformly spaced record triple");
  }
  return worst;
}

double gronwall_check_E1(std::span<const DiagnosticsRecord> records, const model::ModelParams& params) {
  if (records.empty()) {
    return 0.0;
  }
  const double rate_scale = 1.0 / (params.mu() * params.c());
  const double E0 = records.front().E1;
  const double t0 = records.front().t;
  double running_sup = 0.0;
  double worst = 0.0;
  bool first = true;
  for (const auto& r : records) {
    running_sup = std::max(running_sup, r.sup_norm);
    const double margin = std::exp(running_sup * rate_scale * (r.t - t0)) * E0 - r.E1;
    worst = first ? margin : std::min(worst, margin);
    first = false;
  }
  return worst;
}

SobolevNorms sobolev_norms(std::span<const DiagnosticsRecord> records, const model::ModelParams& params,
                           double dt_record) {
  if (records.empty()) {
    throw PreconditionError("sobolev_norms needs at least one record");
  }
  double s2 = 0.0;
  double s3 = 0.0;
  for (const auto& r : records) {
    s2 += dt_record * h2_integrand(r, params);
    s3 += dt_record * h3_integrand(r, params);
  }
  return {std::sqrt(s2), std::sqrt(s3)};
}

double cone_max(std::span<const GridState> states, const ConeSpec& cone, const model::ModelParams& params) {
  if (!(cone.t_c > 0.0)) {
    throw ParameterError("cone apex time t_c must be positive");
  }
  const double c = params.c();
  double worst = 0.0;
  for (const auto& s : states) {
    const Grid& g = s.grid;
    const double base = c * cone.t_c;
    if (cone.x_c - base < g.xmin() || cone.x_c + base > g.xmax()) {
      throw DomainError("cone base leaves the grid domain");
    }
    if (s.t > cone.t_c) {
      throw PreconditionError("cone_max state sampled after the apex time");
    }
    const double radius = c * (cone.t_c - s.t);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::fabs(g.x(i) - cone.x_c) <= radius) {
        worst = std::max(worst, std::fabs(s.v[i]));
      }
    }
  }
  return worst;
}

double support_excess_cells(std::span<const DiagnosticsRecord> records, const model::ModelParams& params,
                            double dx) {
  double worst = 0.0;
  for (const auto& r : records) {
    if (r.support.empty) {
      continue;
    }
    const double bound = params.L() + params.c() * r.t;
    worst = std::max(worst, (r.support.extent() - bound) / dx);
  }
  return worst;
}

} // namespace hburg::diagnostics
