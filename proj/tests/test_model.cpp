#include "doctest.h"

#include "hburg/error.hpp"
#include "hburg/model.hpp"

#include <cmath>
#include <limits>
#include <string>

using namespace hburg;

TEST_CASE("validate_params accepts positive finite parameters") {
  const auto p = model::validate_params(1.0, 1.0, 1.0);
  CHECK(p.c() == 1.0);
  CHECK(model::validate_params(0.25, 1.0, 1.0).c() == 2.0);
}

TEST_CASE("validate_params names the offending parameter") {
  auto message = [](double mu, double nu, double L) {
    try {
      (void)model::validate_params(mu, nu, L);
    } catch (const ParameterError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(0.0, 1.0, 1.0) == "mu must be positive");
  CHECK(message(1.0, -2.0, 1.0) == "nu must be positive");
  CHECK(message(1.0, 1.0, 0.0) == "L must be positive");
  CHECK(message(std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0) == "mu must be finite");
  CHECK(message(1.0, 1.0, std::numeric_limits<double>::infinity()) == "L must be finite");
}

TEST_CASE("wave speed") {
  CHECK(model::derive_wave_speed(model::validate_params(1, 1, 1)).c == 1.0);
  CHECK(model::derive_wave_speed(model::validate_params(1, 4, 1)).c == 2.0);
  CHECK(model::derive_wave_speed(model::validate_params(4, 1, 1)).c == 0.5);

  SUBCASE("depends only on nu / mu") {
    for (double alpha : {0.125, 0.5, 2.0, 8.0, 1024.0}) {
      for (double ratio : {0.25, 1.0, 4.0, 16.0}) {
        const double base = model::validate_params(1.0, ratio, 1.0).c();
        const double scaled = model::validate_params(alpha, alpha * ratio, 1.0).c();
        CHECK(scaled == base);
      }
    }
  }
}

TEST_CASE("moment thresholds") {
  const auto unit = model::moment_thresholds(model::validate_params(1, 1, 1));
  CHECK(unit.F0_min == doctest::Approx(112.0 / 3.0).epsilon(1e-14));
  CHECK(unit.F1_min == doctest::Approx(448.0 / 3.0).epsilon(1e-14));

  const auto other = model::moment_thresholds(model::validate_params(1, 4, 2));
  CHECK(other.F0_min == doctest::Approx(896.0 / 3.0).epsilon(1e-14));
  CHECK(other.F1_min == doctest::Approx(3584.0 / 3.0).epsilon(1e-14));

  SUBCASE("small L limit") {
    const auto p = model::validate_params(1.0, 4.0, 1e-12);
    const auto th = model::moment_thresholds(p);
    CHECK(th.F0_min < 1e-9);
    CHECK(th.F1_min == doctest::Approx(128.0 * std::pow(p.c(), 3) * p.mu()).epsilon(1e-9));
  }

  SUBCASE("strictly increasing in L and in c") {
    const double Ls[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    const double nus[] = {0.25, 1.0, 2.25, 4.0, 9.0}; // c = sqrt(nu) with mu = 1
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j + 1 < 5; ++j) {
        const auto a = model::moment_thresholds(model::validate_params(1.0, nus[i], Ls[j]));
        const auto b = model::moment_thresholds(model::validate_params(1.0, nus[i], Ls[j + 1]));
        CHECK(a.F0_min < b.F0_min);
        CHECK(a.F1_min < b.F1_min);
        const auto d = model::moment_thresholds(model::validate_params(1.0, nus[j], Ls[i]));
        const auto e = model::moment_thresholds(model::validate_params(1.0, nus[j + 1], Ls[i]));
        CHECK(d.F0_min < e.F0_min);
        CHECK(d.F1_min < e.F1_min);
      }
    }
  }
}
