#include "doctest.h"

#include "hburg/initial_data.hpp"
#include "hburg/kernels.hpp"
#include "hburg/solver.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

using namespace hburg;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = dist(rng);
  }
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double ulps_apart(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) {
    return 0.0;
  }
  return std::fabs(a - b) / (scale * std::numeric_limits<double>::epsilon());
}

} // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::supported(kernels::Backend::Scalar));
  CHECK(kernels::table(kernels::Backend::Scalar).backend == kernels::Backend::Scalar);
}

TEST_CASE("scalar kernels on small inputs") {
  const auto& k = kernels::table(kernels::Backend::Scalar);
  const std::vector<double> u{0.0, 1.0, 4.0, 9.0, 16.0};
  std::vector<double> out(u.size());
  k.diff2(u, 1.0, out);
  CHECK(out == std::vector<double>{0.0, 2.0, 2.0, 2.0, 0.0});
  k.diff1(u, 0.5, out);
  CHECK(out == std::vector<double>{0.0, 2.0, 4.0, 6.0, 0.0});
  k.half_square(u, out);
  CHECK(out[2] == 8.0);
  CHECK(k.sum(u) == 30.0);
  CHECK(k.dot(u, u) == 0.0 + 1.0 + 16.0 + 81.0 + 256.0);
  const std::vector<double> with_nan{1.0, std::nan(""), -7.0};
  CHECK(k.max_abs(with_nan) == 7.0);
  CHECK_FALSE(k.all_finite(with_nan));
  CHECK(k.all_finite(u));
}

TEST_CASE("compensated sum recovers cancellation") {
  const auto& k = kernels::table(kernels::Backend::Scalar);
  const std::vector<double> f{1.0, 1e100, 1.0, -1e100};
  CHECK(k.sum(f) == 2.0);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::supported(kernels::Backend::Avx2)) {
    MESSAGE("AVX2 not supported on this CPU; equivalence test skipped");
    return;
  }
  const auto& s = kernels::table(kernels::Backend::Scalar);
  const auto& v = kernels::table(kernels::Backend::Avx2);

  // Sizes cover empty tails and every remainder modulo the vector width.
  for (std::size_t n : {8u, 9u, 10u, 11u, 13u, 64u, 1001u, 4099u}) {
    CAPTURE(n);
    const auto a = random_vector(n, 1 + n);
    const auto b = random_vector(n, 2 + n);
    const auto c = random_vector(n, 3 + n);
    const auto d = random_vector(n, 4 + n);
    std::vector<double> os(n), ov(n);

    s.axpy(a, 0.37, b, os);
    v.axpy(a, 0.37, b, ov);
    CHECK(bit_equal(os, ov));

    auto ys = a;
    auto yv = a;
    s.rk4_combine(ys, b, c, d, a, 1.0 / 6.0 * 0.01);
    v.rk4_combine(yv, b, c, d, a, 1.0 / 6.0 * 0.01);
    CHECK(bit_equal(ys, yv));

    s.half_square(a, os);
    v.half_square(a, ov);
    CHECK(bit_equal(os, ov));

    s.product(a, b, os);
    v.product(a, b, ov);
    CHECK(bit_equal(os, ov));

    const kernels::WaveCoeffs coeffs{0.7, 1.0 / 0.3, 1.0 / (0.01 * 0.01), 1.0 / 0.02};
    s.wave_accel(coeffs, a, b, c, os);
    v.wave_accel(coeffs, a, b, c, ov);
    CHECK(bit_equal(os, ov));

    s.diff1(a, 50.0, os);
    v.diff1(a, 50.0, ov);
    CHECK(bit_equal(os, ov));

    s.diff2(a, 1e4, os);
    v.diff2(a, 1e4, ov);
    CHECK(bit_equal(os, ov));

    CHECK(s.max_abs(a) == v.max_abs(a));
    CHECK(ulps_apart(s.sum(a), v.sum(a)) <= 4.0);
    CHECK(ulps_apart(s.dot(a, b), v.dot(a, b)) <= 4.0);

    auto bad = a;
    CHECK(v.all_finite(bad));
    bad[n - 1] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(v.all_finite(bad));
    CHECK_FALSE(s.all_finite(bad));
    bad[n - 1] = std::nan("");
    CHECK_FALSE(v.all_finite(bad));
    CHECK(v.max_abs(bad) == s.max_abs(bad));
  }
}

TEST_CASE("RK4 trajectories are bit-identical across backends") {
  if (!kernels::supported(kernels::Backend::Avx2)) {
    MESSAGE("AVX2 not supported on this CPU; trajectory comparison skipped");
    return;
  }
  const auto params = model::validate_params(1.0, 1.0, 1.0);
  const Grid grid(-4.0, 4.0, 1027);
  const initial_data::ProfileSpec prof{initial_data::ProfileFamily::OddBump, 20.0, 5.0, 1.0};
  GridState a = initial_data::sample_initial_state(params, grid, prof);
  GridState b = a;
  solver::Rk4Stepper sa(grid.size(), kernels::table(kernels::Backend::Scalar));
  solver::Rk4Stepper sb(grid.size(), kernels::table(kernels::Backend::Avx2));
  const double dt = solver::stable_dt(grid, params, 0.4);
  for (int k = 0; k < 200; ++k) {
    sa.advance(a, params, dt);
    sb.advance(b, params, dt);
  }
  CHECK(a.t == b.t);
  CHECK(bit_equal(a.v, b.v));
  CHECK(bit_equal(a.w, b.w));
}
