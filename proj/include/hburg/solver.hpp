#pragma once

// Method-of-lines integration of mu v_tt + v_t + v v_x = nu v_xx written as
//   v_t = w,   w_t = (nu D2 v - D1(v^2 / 2) - w) / mu
// with second-order central stencils, pinned zero end nodes and classical RK4.

#include "hburg/diagnostics.hpp"
#include "hburg/grid.hpp"
#include "hburg/kernels.hpp"
#include "hburg/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hburg::solver {

/// min(cfl dx / c, mu). Throws ParameterError unless 0 < cfl <= 1.
double stable_dt(const Grid& grid, const model::ModelParams& params, double cfl);

struct Derivatives {
  std::vector<double> dv;
  std::vector<double> dw;
};

Derivatives rhs(const GridState& state, const model::ModelParams& params);

/// Reusable RK4 workspace for one grid size.
class Rk4Stepper {
public:
  explicit Rk4Stepper(std::size_t n, const kernels::KernelTable& kernels = kernels::active());

  /// Advances state by dt in place; t += dt and the end nodes are re-pinned to zero.
  void advance(GridState& state, const model::ModelParams& params, double dt);

private:
  void accel(std::span<const double> v, std::span<const double> w, std::span<double> out);

  const kernels::KernelTable* kernels_;
  kernels::WaveCoeffs coeffs_{};
  std::vector<double> flux_, stage_v_;
  std::vector<double> kv2_, kv3_, kv4_;
  std::vector<double> kw1_, kw2_, kw3_, kw4_;
};

/// Pure single step. Throws ParameterError for dt <= 0.
GridState step_rk4(const GridState& state, const model::ModelParams& params, double dt);

enum class RunStatus { Completed, BlowupDetected, NumericalFailure };

std::string_view status_name(RunStatus status) noexcept;

struct IntegrateOptions {
  double t_end = 1.0;
  /// Sup-norm level that counts as blow-up; <= 0 selects 1e6 max(1, sup |v0|).
  double blowup_threshold = 0.0;
  std::size_t record_stride = 1;
  double cfl = 0.4;
};

struct RunOutcome {
  RunStatus status = RunStatus::Completed;
  /// Crossing time for BlowupDetected, failure time for NumericalFailure, final time otherwise.
  double t_event = 0.0;
  double dt = 0.0;
  double blowup_threshold = 0.0;
  std::vector<diagnostics::DiagnosticsRecord> records;
  std::optional<GridState> final_state;
};

/// Called with the state behind every emitted record.
using RecordObserver = std::function<void(const GridState&)>;

double default_blowup_threshold(const GridState& state0);

/// Steps from state0 until t >= t_end, sup |v| >= threshold, or a non-finite value.
/// Records are emitted at step 0, every record_stride steps, and at termination
/// (none for the failing step of a NumericalFailure).
/// Throws ConfigError for a domain-margin violation or record_stride == 0.
RunOutcome integrate(const GridState& state0, const model::ModelParams& params, const IntegrateOptions& options,
                     const RecordObserver& observer = {});

struct BlowupEstimate {
  double t_m = 0.0;
  bool converged = false;
  std::vector<double> crossings;
};

/// Outcomes ordered by increasing resolution; t_m is the finest crossing and
/// converged means the last two crossings differ by < 5% relative.
/// Throws PreconditionError for fewer than 2 outcomes or any non-blow-up outcome.
BlowupEstimate estimate_blowup_time(std::span<const RunOutcome> outcomes_by_resolution);

} // namespace hburg::solver
