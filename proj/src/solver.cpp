#include "hburg/solver.hpp"

#include "hburg/error.hpp"

#include <algorithm>
#include <cmath>

namespace hburg::solver {

double stable_dt(const Grid& grid, const model::ModelParams& params, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw ParameterError("cfl must lie in (0, 1]");
  }
  return std::min(cfl * grid.dx() / params.c(), params.mu());
}

namespace {

kernels::WaveCoeffs make_coeffs(const Grid& grid, const model::ModelParams& params) {
  const double dx = grid.dx();
  return {params.nu(), 1.0 / params.mu(), 1.0 / (dx * dx), 1.0 / (2.0 * dx)};
}

void pin_ends(GridState& s) {
  if (s.v.empty()) {
    return;
  }
  s.v.front() = 0.0;
  s.v.back() = 0.0;
  s.w.front() = 0.0;
  s.w.back() = 0.0;
}

} // namespace

Derivatives rhs(const GridState& state, const model::ModelParams& params) {
  const auto& k = kernels::active();
  const std::size_t n = state.v.size();
  Derivatives d{state.w, std::vector<double>(n)};
  if (n > 0) {
    d.dv.front() = 0.0;
    d.dv.back() = 0.0;
  }
  std::vector<double> flux(n);
  k.half_square(state.v, flux);
  k.wave_accel(make_coeffs(state.grid, params), state.v, flux, state.w, d.dw);
  return d;
}

Rk4Stepper::Rk4Stepper(std::size_t n, const kernels::KernelTable& kernels)
    : kernels_(&kernels), flux_(n), stage_v_(n), kv2_(n), kv3_(n), kv4_(n), kw1_(n), kw2_(n), kw3_(n), kw4_(n) {}

void Rk4Stepper::accel(std::span<const double> v, std::span<const double> w, std::span<double> out) {
  kernels_->half_square(v, flux_);
  kernels_->wave_accel(coeffs_, v, flux_, w, out);
}

void Rk4Stepper::advance(GridState& s, const model::ModelParams& params, double dt) {
  const auto& k = *kernels_;
  coeffs_ = make_coeffs(s.grid, params);
  const double half = 0.5 * dt;

  // Stage velocities are the stage w fields; kv1 is w itself.
  accel(s.v, s.w, kw1_);

  k.axpy(s.v, half, s.w, stage_v_);
  k.axpy(s.w, half, kw1_, kv2_);
  accel(stage_v_, kv2_, kw2_);

  k.axpy(s.v, half, kv2_, stage_v_);
  k.axpy(s.w, half, kw2_, kv3_);
  accel(stage_v_, kv3_, kw3_);

  k.axpy(s.v, dt, kv3_, stage_v_);
  k.axpy(s.w, dt, kw3_, kv4_);
  accel(stage_v_, kv4_, kw4_);

  const double h6 = dt / 6.0;
  k.rk4_combine(s.v, s.w, kv2_, kv3_, kv4_, h6);
  k.rk4_combine(s.w, kw1_, kw2_, kw3_, kw4_, h6);
  s.t += dt;
  pin_ends(s);
}

GridState step_rk4(const GridState& state, const model::ModelParams& params, double dt) {
  if (!(dt > 0.0)) {
    throw ParameterError("dt must be positive");
  }
  GridState next = state;
  Rk4Stepper stepper(state.v.size());
  stepper.advance(next, params, dt);
  return next;
}

std::string_view status_name(RunStatus status) noexcept {
  switch (status) {
  case RunStatus::Completed:
    return "Completed";
  case RunStatus::BlowupDetected:
    return "BlowupDetected";
  case RunStatus::NumericalFailure:
    return "NumericalFailure";
  }
  return "Completed";
}

double default_blowup_threshold(const GridState& state0) {
  return 1e6 * std::max(1.0, kernels::active().max_abs(state0.v));
}

RunOutcome integrate(const GridState& state0, const model::ModelParams& params, const IntegrateOptions& options,
                     const RecordObserver& observer) {
  if (options.record_stride == 0) {
    throw ConfigError("record_stride must be at least 1");
  }
  if (!(options.t_end >= state0.t) || !std::isfinite(options.t_end)) {
    throw ConfigError("t_end must be finite and not before the initial time");
  }
  check_domain_margin(state0.grid, params, options.t_end);

  const auto& k = kernels::active();
  RunOutcome out;
  out.dt = stable_dt(state0.grid, params, options.cfl);
  out.blowup_threshold =
      options.blowup_threshold > 0.0 ? options.blowup_threshold : default_blowup_threshold(state0);

  GridState state = state0;
  pin_ends(state);
  const double t0 = state.t;
  const auto steps = static_cast<std::size_t>(std::ceil((options.t_end - t0) / out.dt - 1e-9));

  auto emit = [&]() {
    out.records.push_back(diagnostics::evaluate(state, params));
    if (observer) {
      observer(state);
    }
  };

  emit();
  if (out.records.back().sup_norm >= out.blowup_threshold) {
    out.status = RunStatus::BlowupDetected;
    out.t_event = state.t;
  } else {
    Rk4Stepper stepper(state.v.size(), k);
    out.status = RunStatus::Completed;
    for (std::size_t step = 1; step <= steps; ++step) {
      stepper.advance(state, params, out.dt);
      state.t = t0 + static_cast<double>(step) * out.dt;
      if (!k.all_finite(state.v) || !k.all_finite(state.w)) {
        out.status = RunStatus::NumericalFailure;
        out.t_event = state.t;
        break;
      }
      if (k.max_abs(state.v) >= out.blowup_threshold) {
        out.status = RunStatus::BlowupDetected;
        out.t_event = state.t;
        emit();
        break;
      }
      if (step % options.record_stride == 0 || step == steps) {
        emit();
      }
    }
    if (out.status == RunStatus::Completed) {
      out.t_event = state.t;
    }
  }

  diagnostics::accumulate_sobolev(out.records, params);
  if (out.status != RunStatus::NumericalFailure) {
    out.final_state = std::move(state);
  }
  return out;
}

BlowupEstimate estimate_blowup_time(std::span<const RunOutcome> outcomes) {
  if (outcomes.size() < 2) {
    throw PreconditionError("blow-up time estimate needs at least two resolutions");
  }
  BlowupEstimate est;
  for (const auto& o : outcomes) {
    if (o.status != RunStatus::BlowupDetected) {
      throw PreconditionError("blow-up time estimate requires every outcome to be BlowupDetected");
    }
    est.crossings.push_back(o.t_event);
  }
  const double last = est.crossings.back();
  const double prev = est.crossings[est.crossings.size() - 2];
  est.t_m = last;
  est.converged = std::fabs(last - prev) < 0.05 * std::fabs(last);
  return est;
}

} // namespace hburg::solver
