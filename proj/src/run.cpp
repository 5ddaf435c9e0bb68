#include "hburg/run.hpp"

#include "hburg/error.hpp"
#include "hburg/initial_data.hpp"
#include "hburg/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <limits>
#include <span>
#include <sstream>

namespace hburg::cli {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int exit_code(solver::RunStatus status) noexcept {
  switch (status) {
  case solver::RunStatus::Completed:
    return 0;
  case solver::RunStatus::BlowupDetected:
    return 2;
  case solver::RunStatus::NumericalFailure:
    return 3;
  }
  return 3;
}

namespace {

DiagnosticsSummary summarize(const solver::RunOutcome& outcome, const certificate::Certificate& cert,
                             const model::ModelParams& params, const Grid& grid) {
  DiagnosticsSummary s;
  const auto& recs = outcome.records;
  if (recs.empty()) {
    return s;
  }
  s.schwartz_gap_min = std::numeric_limits<double>::infinity();
  s.schwartz_gap_min_normalized = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    s.schwartz_gap_min = std::min(s.schwartz_gap_min, r.schwartz_gap);
    s.schwartz_gap_min_normalized = std::min(s.schwartz_gap_min_normalized, r.schwartz_gap / (1.0 + r.F * r.F));
    s.max_half_int_v2 = std::max(s.max_half_int_v2, r.half_int_v2);
  }
  if (recs.size() >= 3) {
    try {
      s.identity_residual = diagnostics::identity_residual(recs, params);
    } catch (const PreconditionError&) {
      s.identity_residual.reset();
    }
  }
  s.gronwall_margin_min = diagnostics::gronwall_check_E1(recs, params);
  if (cert.certified()) {
    std::span<const diagnostics::DiagnosticsRecord> before(recs);
    if (outcome.status == solver::RunStatus::BlowupDetected && before.size() > 1) {
      before = before.first(before.size() - 1);
    }
    s.comparison = certificate::comparison_check(before, cert, params);
  }
  s.support_excess_cells = diagnostics::support_excess_cells(recs, params, grid.dx());
  s.sobolev_H2 = recs.back().sobolev_H2_accum;
  s.sobolev_H3 = recs.back().sobolev_H3_accum;
  return s;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

} // namespace

RunReport run_config(const RunConfig& config, const solver::RecordObserver& observer) {
  validate(config);
  const auto params = model::validate_params(config.mu, config.nu, config.L);
  const Grid grid(config.xmin, config.xmax, config.n);

  initial_data::ProfileSpec profile;
  profile.family = config.ic.family;
  profile.L = params.L();
  if (config.ic.by_moments()) {
    const auto amp =
        initial_data::calibrate(profile.family, profile.L, grid, *config.ic.F0_target, *config.ic.F1_target);
    profile.a = amp.a;
    profile.b = amp.b;
  } else {
    profile.a = *config.ic.a;
    profile.b = *config.ic.b;
  }
  const GridState state0 = initial_data::sample_initial_state(params, grid, profile);

  const double F0 = diagnostics::moment_F(state0);
  const double F1 = diagnostics::moment_Fprime(state0);
  auto cert = certificate::certify(params, F0, F1, config.epsilon);

  solver::IntegrateOptions opts;
  opts.t_end = config.t_end;
  opts.blowup_threshold = config.blowup_threshold;
  opts.record_stride = config.record_stride;
  opts.cfl = config.cfl;
  auto outcome = solver::integrate(state0, params, opts, observer);
  auto summary = summarize(outcome, cert, params, grid);

  return RunReport{config,  params,  std::move(cert), model::moment_thresholds(params), std::move(outcome),
                   summary, std::nullopt, std::nullopt};
}

void write_csv(std::ostream& os, const RunReport& report) {
  os << "t,sup_norm,F,Fprime,E1,E2,E3,support_left,support_right,schwartz_gap,G_lower_bound,half_int_v2\n";
  for (const auto& r : report.outcome.records) {
    const auto G = certificate::lower_bound_at(report.certificate, report.params, r.t);
    os << format_double(r.t) << ',' << format_double(r.sup_norm) << ',' << format_double(r.F) << ','
       << format_double(r.Fprime) << ',' << format_double(r.E1) << ',' << format_double(r.E2) << ','
       << format_double(r.E3) << ',' << format_double(r.support.left) << ',' << format_double(r.support.right)
       << ',' << format_double(r.schwartz_gap) << ',' << (G ? format_double(*G) : std::string()) << ','
       << format_double(r.half_int_v2) << '\n';
  }
}

std::string render_csv(const RunReport& report) {
  std::ostringstream os;
  write_csv(os, report);
  return os.str();
}

json certificate_json(const certificate::Certificate& cert, const model::ModelParams& params) {
  const auto th = model::moment_thresholds(params);
  json interval = nullptr;
  if (cert.eps_interval) {
    interval = {{"lower", cert.eps_interval->lower},
                {"upper", cert.eps_interval->upper},
                {"upper_inclusive", cert.eps_interval->upper_inclusive}};
  }
  return {
      {"F0", cert.F0},
      {"F1", cert.F1},
      {"thresholds", {{"F0_min", th.F0_min}, {"F1_min", th.F1_min}}},
      {"thresholds_met", cert.thresholds_met},
      {"eps_interval", interval},
      {"eps_chosen", optional_number(cert.eps_chosen)},
      {"G0", cert.G0},
      {"T_star", optional_number(cert.T_star)},
      {"T_star_tightest", optional_number(cert.T_star_tightest)},
  };
}

json report_json(const RunReport& report) {
  const auto& o = report.outcome;
  json outcome{
      {"status", std::string(solver::status_name(o.status))},
      {"dt", o.dt},
      {"blowup_threshold", o.blowup_threshold},
      {"records", o.records.size()},
      {"t_detect", o.status == solver::RunStatus::BlowupDetected ? json(o.t_event) : json(nullptr)},
      {"t_fail", o.status == solver::RunStatus::NumericalFailure ? json(o.t_event) : json(nullptr)},
      {"t_end_reached", o.status == solver::RunStatus::Completed ? json(o.t_event) : json(nullptr)},
  };
  const auto& s = report.summary;
  json comparison = nullptr;
  if (s.comparison) {
    comparison = {{"worst", s.comparison->worst},
                  {"worst_normalized", s.comparison->worst_normalized},
                  {"records_checked", s.comparison->checked}};
  }
  json diag{
      {"schwartz_gap_min", s.schwartz_gap_min},
      {"schwartz_gap_min_normalized", s.schwartz_gap_min_normalized},
      {"identity_residual", optional_number(s.identity_residual)},
      {"max_half_int_v2", s.max_half_int_v2},
      {"gronwall_margin_min", s.gronwall_margin_min},
      {"comparison_margin", comparison},
      {"support_excess_cells", s.support_excess_cells},
      {"sobolev_H2", s.sobolev_H2},
      {"sobolev_H3", s.sobolev_H3},
  };
  return {
      {"config", to_json(report.config)},
      {"certificate", certificate_json(report.certificate, report.params)},
      {"outcome", outcome},
      {"diagnostics", diag},
      {"kernels", kernels::active().name},
  };
}

RunReport execute_config(const RunConfig& config, const std::optional<std::filesystem::path>& out_dir) {
  validate(config);
  const auto dir = out_dir ? resolve_output_dir(out_dir->string()) : resolve_output_dir(config.output.directory);

  RunReport report = run_config(config);
  if (!config.output.emit_csv && !config.output.emit_report) {
    return report;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  if (config.output.emit_csv) {
    const auto path = dir / "records.csv";
    std::ofstream os(path);
    write_csv(os, report);
    if (!os) {
      throw std::runtime_error("failed writing " + path.string());
    }
    report.csv_path = path;
  }
  if (config.output.emit_report) {
    const auto path = dir / "report.json";
    std::ofstream os(path);
    os << report_json(report).dump(2) << '\n';
    if (!os) {
      throw std::runtime_error("failed writing " + path.string());
    }
    report.report_path = path;
  }
  return report;
}

std::vector<RunReport> run_refinement(const RunConfig& base, std::size_t levels) {
  if (levels < 1) {
    throw ConfigError("refinement needs at least one level");
  }
  std::vector<std::future<RunReport>> jobs;
  for (std::size_t l = 0; l < levels; ++l) {
    RunConfig cfg = base;
    cfg.n = base.n << l;
    jobs.push_back(std::async(std::launch::async, [cfg] { return run_config(cfg); }));
  }
  std::vector<RunReport> out;
  out.reserve(levels);
  for (auto& j : jobs) {
    out.push_back(j.get());
  }
  return out;
}

} // namespace hburg::cli
