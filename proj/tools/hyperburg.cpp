// hyperburg: command-line front end for runs, certificates, suites and refinement studies.

#include "hburg/certificate.hpp"
#include "hburg/config.hpp"
#include "hburg/error.hpp"
#include "hburg/model.hpp"
#include "hburg/run.hpp"
#include "hburg/solver.hpp"
#include "hburg/suite.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hburg;
using cli::format_double;

struct MomentArgs {
  double mu = 1.0;
  double nu = 1.0;
  double L = 1.0;
  double F0 = 0.0;
  double F1 = 0.0;
};

void add_moment_options(CLI::App& sub, MomentArgs& args) {
  sub.add_option("--mu", args.mu, "relaxation time")->required();
  sub.add_option("--nu", args.nu, "viscosity")->required();
  sub.add_option("--L", args.L, "support half-width of the initial data")->required();
  sub.add_option("--F0", args.F0, "initial moment F(0)")->required();
  sub.add_option("--F1", args.F1, "initial moment F'(0)")->required();
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const auto config = cli::load_config(config_path);
  const auto report = cli::execute_config(config, out_dir.empty() ? std::nullopt
                                                                  : std::optional<std::filesystem::path>(out_dir));
  const auto& o = report.outcome;
  std::cout << "status " << solver::status_name(o.status) << '\n'
            << "t " << format_double(o.t_event) << '\n'
            << "records " << o.records.size() << '\n';
  if (report.csv_path) {
    std::cout << "csv " << report.csv_path->string() << '\n';
  }
  if (report.report_path) {
    std::cout << "report " << report.report_path->string() << '\n';
  }
  return cli::exit_code(o.status);
}

int cmd_thresholds(const MomentArgs& a) {
  const auto params = model::validate_params(a.mu, a.nu, a.L);
  const auto th = model::moment_thresholds(params);
  const bool met = certificate::check_moment_thresholds(params, a.F0, a.F1);
  std::cout << "F0_min " << format_double(th.F0_min) << '\n'
            << "F1_min " << format_double(th.F1_min) << '\n'
            << "verdict " << (met ? "met" : "not_met") << '\n';
  return 0;
}

int cmd_certificate(const MomentArgs& a, std::optional<double> eps) {
  const auto params = model::validate_params(a.mu, a.nu, a.L);
  const auto cert = certificate::certify(params, a.F0, a.F1, eps);
  std::cout << cli::certificate_json(cert, params).dump(2) << '\n';
  return 0;
}

int cmd_suite(const std::string& preset) {
  const auto result = cli::run_suite(preset);
  for (const auto& a : result.assertions) {
    std::cout << (a.passed ? "[PASS] " : "[FAIL] ") << a.name << "  (" << a.detail << ")\n";
  }
  std::cout << "suite " << result.preset << ' ' << (result.passed() ? "passed" : "failed") << '\n';
  return result.passed() ? 0 : 1;
}

int cmd_convergence(const std::string& config_path, std::size_t levels) {
  auto config = cli::load_config(config_path);
  cli::validate(config);
  const auto reports = cli::run_refinement(config, levels);
  std::vector<solver::RunOutcome> outcomes;
  for (const auto& r : reports) {
    std::cout << "n " << r.config.n << " status " << solver::status_name(r.outcome.status) << " t "
              << format_double(r.outcome.t_event) << '\n';
    outcomes.push_back(r.outcome);
  }
  try {
    const auto est = solver::estimate_blowup_time(outcomes);
    std::cout << "t_m " << format_double(est.t_m) << '\n'
              << "converged " << (est.converged ? "true" : "false") << '\n';
    return 0;
  } catch (const PreconditionError& e) {
    // Some level did not blow up; the study itself still succeeded.
    std::cout << "t_m none\nconverged false\n";
    std::cerr << "hyperburg: " << e.what() << '\n';
    return 0;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic Burgers blow-up laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "integrate one configuration and write records.csv and report.json");
  run->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (relative paths resolve against HYPERBURG_OUT)");

  MomentArgs th_args;
  auto* thresholds = app.add_subcommand("thresholds", "print the moment thresholds and the verdict");
  add_moment_options(*thresholds, th_args);

  MomentArgs cert_args;
  std::optional<double> eps;
  auto* cert = app.add_subcommand("certificate", "print the blow-up certificate as JSON");
  add_moment_options(*cert, cert_args);
  cert->add_option("--eps", eps, "comparison constant (window midpoint when absent)");

  std::string preset;
  auto* suite = app.add_subcommand("suite", "run a verification preset");
  suite->add_option("preset", preset, "preset name")->required();

  std::size_t levels = 3;
  auto* conv = app.add_subcommand("convergence", "blow-up time under grid refinement");
  conv->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  conv->add_option("--levels", levels, "number of resolutions n, 2n, 4n, ...")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      return cmd_run(config_path, out_dir);
    }
    if (*thresholds) {
      return cmd_thresholds(th_args);
    }
    if (*cert) {
      return cmd_certificate(cert_args, eps);
    }
    if (*suite) {
      return cmd_suite(preset);
    }
    return cmd_convergence(config_path, levels);
  } catch (const std::exception& e) {
    std::cerr << "hyperburg: " << e.what() << '\n';
    return 1;
  }
}
