#include "doctest.h"

#include "hburg/config.hpp"
#include "hburg/error.hpp"
#include "hburg/run.hpp"
#include "hburg/suite.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace hburg;
using nlohmann::json;

namespace {

json small_config() {
  return json::parse(R"({
    "params": {"mu": 1, "nu": 1, "L": 1},
    "grid": {"xmin": -3, "xmax": 3, "n": 301},
    "t_end": 0.5,
    "record_stride": 5,
    "ic": {"family": "odd_bump", "a": 0.0, "b": 0.0}
  })");
}

std::filesystem::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() / ("hburg_test_" + tag + "_" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  return dir;
}

} // namespace

TEST_CASE("config parsing is strict") {
  CHECK_NOTHROW(cli::parse_config(small_config()));

  auto doc = small_config();
  doc["bogus"] = 1;
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc["grid"]["dx"] = 0.1;
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc["ic"]["F0"] = 40;
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc["ic"] = {{"F0", 40}};
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc["grid"]["n"] = -5;
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc["params"]["mu"] = "one";
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

  doc = small_config();
  doc.erase("t_end");
  CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);
}

TEST_CASE("config echo round-trips") {
  auto doc = small_config();
  doc["epsilon"] = 0.65;
  doc["ic"] = {{"family", "odd_bump"}, {"F0", 40.0}, {"F1", 200.0}};
  doc["cfl"] = 0.3;
  const auto c = cli::parse_config(doc);
  const auto echo = cli::to_json(c);
  const auto again = cli::parse_config(echo);
  CHECK(cli::to_json(again) == echo);
  CHECK(*again.epsilon == 0.65);
  CHECK(again.cfl == 0.3);
  CHECK(again.ic.by_moments());
}

TEST_CASE("validation") {
  auto c = cli::parse_config(small_config());
  CHECK_NOTHROW(cli::validate(c));
  c.t_end = 2.0; // needs xmax >= 1 + 2 + 10 dx
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
  c = cli::parse_config(small_config());
  c.record_stride = 0;
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
  c = cli::parse_config(small_config());
  c.mu = 0.0;
  CHECK_THROWS_AS(cli::validate(c), ParameterError);
}

TEST_CASE("margin violation writes nothing") {
  const auto dir = scratch_dir("margin");
  auto c = cli::parse_config(small_config());
  c.t_end = 5.0;
  c.output.directory = dir.string();
  CHECK_THROWS_AS(cli::execute_config(c), ConfigError);
  CHECK_FALSE(std::filesystem::exists(dir));
}

TEST_CASE("zero-amplitude run") {
  const auto dir = scratch_dir("zero");
  auto c = cli::parse_config(small_config());
  c.output.directory = dir.string();
  const auto rep = cli::execute_config(c);
  CHECK(rep.outcome.status == solver::RunStatus::Completed);
  CHECK(cli::exit_code(rep.outcome.status) == 0);
  CHECK(rep.summary.schwartz_gap_min == 0.0);
  CHECK(rep.summary.gronwall_margin_min == 0.0);
  CHECK(rep.summary.identity_residual.value_or(-1.0) == 0.0);
  CHECK(rep.summary.support_excess_cells == 0.0);
  CHECK_FALSE(rep.summary.comparison);
  REQUIRE(rep.csv_path);
  REQUIRE(rep.report_path);

  std::ifstream in(*rep.report_path);
  const auto report = json::parse(in);
  CHECK(report.at("outcome").at("status") == "Completed");
  // The report is re-runnable from its config echo.
  const auto again = cli::parse_config(report.at("config"));
  CHECK(cli::render_csv(cli::run_config(again)) == cli::render_csv(rep));
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory resolution") {
  ::setenv("HYPERBURG_OUT", "/tmp/hburg_root", 1);
  CHECK(cli::resolve_output_dir("runA") == std::filesystem::path("/tmp/hburg_root/runA"));
  CHECK(cli::resolve_output_dir("/abs/dir") == std::filesystem::path("/abs/dir"));
  ::unsetenv("HYPERBURG_OUT");
  CHECK(cli::resolve_output_dir("runA") == std::filesystem::path("runA"));
}

TEST_CASE("csv layout and round-trip formatting") {
  auto doc = small_config();
  doc["ic"] = {{"family", "odd_bump"}, {"a", 1.0}, {"b", 0.0}};
  const auto rep = cli::run_config(cli::parse_config(doc));
  const auto csv = cli::render_csv(rep);
  const auto header = csv.substr(0, csv.find('\n'));
  CHECK(header == "t,sup_norm,F,Fprime,E1,E2,E3,support_left,support_right,schwartz_gap,G_lower_bound,half_int_v2");
  CHECK(std::stod(cli::format_double(0.1)) == 0.1);
  CHECK(cli::format_double(1.0 / 3.0) == "0.3333333333333333");
  const double awkward = 5.086765591828013;
  CHECK(std::stod(cli::format_double(awkward)) == awkward);
}

TEST_CASE("exit codes") {
  CHECK(cli::exit_code(solver::RunStatus::Completed) == 0);
  CHECK(cli::exit_code(solver::RunStatus::BlowupDetected) == 2);
  CHECK(cli::exit_code(solver::RunStatus::NumericalFailure) == 3);
}

TEST_CASE("presets") {
  CHECK_THROWS_WITH_AS(cli::run_suite("nonsense"), doctest::Contains("certificate-oracle"), ConfigError);
  CHECK(cli::preset_names().size() == 7);
  CHECK_THROWS_AS(cli::preset_config("convergence"), ConfigError);
  for (auto name : {"propagation", "cone", "identity", "blowup", "smalldata"}) {
    CAPTURE(name);
    CHECK_NOTHROW(cli::validate(cli::preset_config(name)));
  }
}
