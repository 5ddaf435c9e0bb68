#include "doctest.h"

#include "hburg/diagnostics.hpp"
#include "hburg/error.hpp"
#include "hburg/initial_data.hpp"
#include "hburg/solver.hpp"

#include <cmath>
#include <vector>

using namespace hburg;

namespace {

GridState small_state(const model::ModelParams& params, const Grid& grid, double sup_v, double sup_w = 0.0) {
  const double peak = initial_data::bump_peak(params.L());
  return initial_data::sample_initial_state(
      params, grid, {initial_data::ProfileFamily::OddBump, sup_v / peak, sup_w / peak, params.L()});
}

} // namespace

TEST_CASE("stable_dt") {
  const auto unit = model::validate_params(1.0, 1.0, 1.0);
  const Grid g(0.0, 1.0, 101); // dx = 0.01
  CHECK(solver::stable_dt(g, unit, 0.4) == doctest::Approx(0.004).epsilon(1e-14));
  CHECK(solver::stable_dt(g, model::validate_params(1.0, 4.0, 1.0), 0.4) == doctest::Approx(0.002).epsilon(1e-14));
  const Grid coarse(0.0, 10.0, 11); // dx = 1
  CHECK(solver::stable_dt(coarse, model::validate_params(0.1, 1e-7, 1.0), 0.5) == doctest::Approx(0.1));
  CHECK_THROWS_AS(solver::stable_dt(g, unit, 0.0), ParameterError);
  CHECK_THROWS_AS(solver::stable_dt(g, unit, 1.5), ParameterError);
}

TEST_CASE("rhs") {
  const auto params = model::validate_params(1.0, 1.0, 1.0);

  SUBCASE("rest state") {
    const auto d = solver::rhs(GridState::zero(Grid(-1.0, 1.0, 16)), params);
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(d.dv[i] == 0.0);
      CHECK(d.dw[i] == 0.0);
    }
  }

  SUBCASE("three-point impulse") {
    GridState s = GridState::zero(Grid(0.0, 8.0, 9)); // dx = 1
    s.v[4] = 1.0;
    const auto d = solver::rhs(s, params);
    CHECK(d.dw[4] == -2.0);
    // Neighbours see the diffusion and the flux difference -(q[i+1] - q[i-1]) / 2 with q = v^2 / 2.
    CHECK(d.dw[3] == doctest::Approx(1.0 - 0.25));
    CHECK(d.dw[5] == doctest::Approx(1.0 + 0.25));
  }

  SUBCASE("small amplitude reduces to the telegraph operator") {
    const Grid grid(-4.0, 4.0, 801);
    const auto s = small_state(params, grid, 1e-8, 1e-8);
    const auto d = solver::rhs(s, params);
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const double lin = (params.nu() * (s.v[i + 1] - 2.0 * s.v[i] + s.v[i - 1]) * inv_dx2 - s.w[i]) / params.mu();
      worst = std::max(worst, std::fabs(d.dw[i] - lin));
      scale = std::max(scale, std::fabs(lin));
      CHECK(d.dv[i] == s.w[i]);
    }
    CHECK(worst <= 1e-6 * scale);
  }
}

TEST_CASE("RK4 step") {
  const auto params = model::validate_params(1.0, 1.0, 1.0);
  const Grid grid(-3.0, 3.0, 257);

  SUBCASE("zero is a fixed point") {
    const auto next = solver::step_rk4(GridState::zero(grid), params, 0.01);
    CHECK(next.t == 0.01);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(next.v[i] == 0.0);
      CHECK(next.w[i] == 0.0);
    }
  }

  SUBCASE("deterministic and pinned") {
    const auto s = small_state(params, grid, 2.0, 1.0);
    const auto a = solver::step_rk4(s, params, 0.005);
    const auto b = solver::step_rk4(s, params, 0.005);
    CHECK(a.v == b.v);
    CHECK(a.w == b.w);
    CHECK(a.v.front() == 0.0);
    CHECK(a.w.back() == 0.0);
  }

  SUBCASE("stepper and pure step agree") {
    auto s = small_state(params, grid, 0.5, 0.2);
    const auto pure = solver::step_rk4(s, params, 0.004);
    solver::Rk4Stepper stepper(grid.size());
    stepper.advance(s, params, 0.004);
    CHECK(s.v == pure.v);
    CHECK(s.w == pure.w);
  }

  CHECK_THROWS_AS(solver::step_rk4(GridState::zero(grid), params, 0.0), ParameterError);
}

TEST_CASE("integrate") {
  const auto params = model::validate_params(1.0, 1.0, 1.0);

  SUBCASE("zero data stay zero") {
    const Grid grid(-3.0, 3.0, 301);
    const auto out = solver::integrate(GridState::zero(grid), params, {1.0, 0.0, 5, 0.4});
    CHECK(out.status == solver::RunStatus::Completed);
    CHECK(out.t_event >= 1.0);
    for (const auto& r : out.records) {
      CHECK(r.F == 0.0);
      CHECK(r.E1 == 0.0);
      CHECK(r.E3 == 0.0);
      CHECK(r.sup_norm == 0.0);
      CHECK(r.support.empty);
    }
  }

  SUBCASE("records increase in time and end at termination") {
    const Grid grid(-3.0, 3.0, 301);
    const auto out = solver::integrate(small_state(params, grid, 0.1), params, {0.5, 0.0, 7, 0.4});
    REQUIRE(out.records.size() >= 3);
    for (std::size_t k = 1; k < out.records.size(); ++k) {
      CHECK(out.records[k].t > out.records[k - 1].t);
    }
    CHECK(out.records.back().t == out.t_event);
    REQUIRE(out.final_state);
    CHECK(out.final_state->t == out.t_event);
  }

  SUBCASE("deterministic") {
    const Grid grid(-3.0, 3.0, 301);
    const auto s0 = small_state(params, grid, 1.0, 0.5);
    const auto a = solver::integrate(s0, params, {0.5, 0.0, 3, 0.4});
    const auto b = solver::integrate(s0, params, {0.5, 0.0, 3, 0.4});
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      CHECK(a.records[k].F == b.records[k].F);
      CHECK(a.records[k].E2 == b.records[k].E2);
    }
    CHECK(a.final_state->v == b.final_state->v);
  }

  SUBCASE("threshold crossing") {
    const Grid grid(-3.0, 3.0, 301);
    const auto out = solver::integrate(small_state(params, grid, 1.0), params, {0.5, 0.5, 1, 0.4});
    CHECK(out.status == solver::RunStatus::BlowupDetected);
    CHECK(out.t_event == 0.0);
    CHECK(out.records.back().sup_norm >= out.blowup_threshold);
  }

  SUBCASE("default threshold") {
    const Grid grid(-3.0, 3.0, 301);
    CHECK(solver::default_blowup_threshold(small_state(params, grid, 0.1)) == 1e6);
    const auto big = small_state(params, grid, 4.0);
    CHECK(solver::default_blowup_threshold(big) == 1e6 * diagnostics::sup_norm(big));
  }

  SUBCASE("margin violation is rejected before stepping") {
    const Grid grid(-2.0, 2.0, 201);
    CHECK_THROWS_AS(solver::integrate(GridState::zero(grid), params, {1.0, 0.0, 1, 0.4}), ConfigError);
  }

  SUBCASE("zero stride is rejected") {
    const Grid grid(-3.0, 3.0, 301);
    CHECK_THROWS_AS(solver::integrate(GridState::zero(grid), params, {0.1, 0.0, 0, 0.4}), ConfigError);
  }

  SUBCASE("small data decay") {
    const Grid grid(-8.0, 8.0, 801);
    const auto out = solver::integrate(small_state(params, grid, 0.05), params, {4.0, 0.0, 50, 0.4});
    CHECK(out.status == solver::RunStatus::Completed);
    CHECK(out.records.back().sup_norm <= out.records.front().sup_norm);
  }
}

TEST_CASE("numerical failure") {
  // Blow-up data with an unreachable threshold run until the fields overflow.
  const auto params = model::validate_params(1.0, 1.0, 1.0);
  const Grid grid(-8.0, 8.0, 512);
  const auto amp = initial_data::calibrate(initial_data::ProfileFamily::OddBump, 1.0, grid, 40.0, 200.0);
  const auto s0 = initial_data::sample_initial_state(params, grid,
                                                     {initial_data::ProfileFamily::OddBump, amp.a, amp.b, 1.0});
  const auto out = solver::integrate(s0, params, {5.0, 1e308, 1, 0.4});
  CHECK(out.status == solver::RunStatus::NumericalFailure);
  CHECK(out.t_event > 0.0);
  REQUIRE_FALSE(out.records.empty());
  CHECK(out.records.back().t < out.t_event);
  CHECK(std::isfinite(out.records.back().sup_norm));
}

TEST_CASE("blow-up time estimator") {
  auto outcome = [](double t) {
    solver::RunOutcome o;
    o.status = solver::RunStatus::BlowupDetected;
    o.t_event = t;
    return o;
  };
  {
    const std::vector<solver::RunOutcome> same{outcome(3.0), outcome(3.0)};
    const auto est = solver::estimate_blowup_time(same);
    CHECK(est.t_m == 3.0);
    CHECK(est.converged);
  }
  {
    const std::vector<solver::RunOutcome> gap{outcome(5.0), outcome(4.0)};
    const auto est = solver::estimate_blowup_time(gap);
    CHECK(est.t_m == 4.0);
    CHECK_FALSE(est.converged);
  }
  {
    std::vector<solver::RunOutcome> mixed{outcome(5.0), outcome(4.0)};
    mixed[0].status = solver::RunStatus::Completed;
    CHECK_THROWS_AS(solver::estimate_blowup_time(mixed), PreconditionError);
    const std::vector<solver::RunOutcome> one{outcome(1.0)};
    CHECK_THROWS_AS(solver::estimate_blowup_time(one), PreconditionError);
  }
}
