#pragma once

#include "hburg/grid.hpp"
#include "hburg/model.hpp"

#include <span>
#include <vector>

namespace hburg::diagnostics {

/// Outermost nodes where |v| or |w| exceeds the detection threshold.
/// An empty support is reported as left == right == 0 with `empty` set.
struct Support {
  double left = 0.0;
  double right = 0.0;
  bool empty = true;

  /// max(|left|, |right|), 0 when empty.
  double extent() const noexcept;
};

/// One time sample of every monitored functional.
struct DiagnosticsRecord {
  double t = 0.0;
  double F = 0.0;      // int x v dx
  double Fprime = 0.0; // int x v_t dx
  double E1 = 0.0;     // 1/2 int (v_t^2 + c^2 v_x^2)
  double E2 = 0.0;     // 1/2 int (v_tt^2 + c^4 v_xx^2)
  double E3 = 0.0;     // 1/2 int (v_ttt^2 + c^6 v_xxx^2)
  double sup_norm = 0.0;
  Support support;
  double schwartz_gap = 0.0;
  double half_int_v2 = 0.0; // 1/2 int v^2
  // Cross terms entering the weighted Sobolev integrands.
  double int_vxt2 = 0.0;
  double int_vxtt2 = 0.0;
  double int_vxxt2 = 0.0;
  // sqrt of the time integral (trapezoid over records so far) of the H2 / H3 integrands.
  double sobolev_H2_accum = 0.0;
  double sobolev_H3_accum = 0.0;
};

/// Relative support detection threshold 1e-12 (1 + sup |v|).
double support_threshold(double sup_norm) noexcept;

double moment_F(const GridState& state);
double moment_Fprime(const GridState& state);

/// E_k for k in {1, 2, 3}; throws PreconditionError otherwise.
/// v_tt and v_ttt are reconstructed from the equation with the solver's stencils.
double energy(const GridState& state, const model::ModelParams& params, int order);

double sup_norm(const GridState& state);

Support support_interval(const GridState& state, double threshold);

/// (2/3)(L + c t)^3 int v^2 - F^2, nonnegative up to roundoff for supported solutions.
double schwartz_gap(const GridState& state, const model::ModelParams& params);

/// Every instantaneous quantity of a record (accumulators left at zero).
DiagnosticsRecord evaluate(const GridState& state, const model::ModelParams& params);

/// mu^4 (v_tt^2 + c^2 v_xt^2 + c^4 v_xx^2) + mu^2 (v_t^2 + c^2 v_x^2) + v^2, integrated in x.
double h2_integrand(const DiagnosticsRecord& r, const model::ModelParams& params) noexcept;

/// h2_integrand plus mu^6 (v_ttt^2 + c^2 v_xtt^2 + c^4 v_xxt^2 + c^6 v_xxx^2) integrated in x.
double h3_integrand(const DiagnosticsRecord& r, const model::ModelParams& params) noexcept;

/// Fills sobolev_H2_accum / sobolev_H3_accum by trapezoidal time integration over the series.
void accumulate_sobolev(std::span<DiagnosticsRecord> records, const model::ModelParams& params);

/// max over interior samples of |mu F'' + F' - 1/2 int v^2|, F' and F'' by centred
/// differences of the recorded F. Triples with unequal spacing are skipped.
/// Throws PreconditionError for fewer than 3 records.
double identity_residual(std::span<const DiagnosticsRecord> records, const model::ModelParams& params);

/// min over records of exp(M t / (mu c)) E1(0) - E1(t), M the running max of sup_norm.
double gronwall_check_E1(std::span<const DiagnosticsRecord> records, const model::ModelParams& params);

struct SobolevNorms {
  double H2 = 0.0;
  double H3 = 0.0;
};

/// Rectangle-rule time integration with uniform weight dt_record. Throws PreconditionError on empty input.
SobolevNorms sobolev_norms(std::span<const DiagnosticsRecord> records, const model::ModelParams& params,
                           double dt_record);

/// Apex of the backward cone {|x - x_c| <= c (t_c - t)}.
struct ConeSpec {
  double x_c = 0.0;
  double t_c = 1.0;
};

/// max |v| over nodes inside the cone, across states sampled at times <= t_c.
/// Throws DomainError if the cone base leaves the grid, ParameterError if t_c <= 0.
double cone_max(std::span<const GridState> states, const ConeSpec& cone, const model::ModelParams& params);

/// Largest support extent beyond J(t) = {|x| <= L + c t}, in grid cells; 0 if always inside.
double support_excess_cells(std::span<const DiagnosticsRecord> records, const model::ModelParams& params,
                            double dx);

} // namespace hburg::diagnostics
