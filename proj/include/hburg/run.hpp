#pragma once

#include "hburg/certificate.hpp"
#include "hburg/config.hpp"
#include "hburg/model.hpp"
#include "hburg/solver.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hburg::cli {

/// Worst-case values of every diagnostics invariant over a run.
struct DiagnosticsSummary {
  double schwartz_gap_min = 0.0;
  /// min schwartz_gap / (1 + F^2)
  double schwartz_gap_min_normalized = 0.0;
  std::optional<double> identity_residual;
  double max_half_int_v2 = 0.0;
  double gronwall_margin_min = 0.0;
  std::optional<certificate::ComparisonMargin> comparison;
  double support_excess_cells = 0.0;
  double sobolev_H2 = 0.0;
  double sobolev_H3 = 0.0;
};

struct RunReport {
  RunConfig config;
  model::ModelParams params;
  certificate::Certificate certificate;
  model::MomentThresholds thresholds;
  solver::RunOutcome outcome;
  DiagnosticsSummary summary;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> report_path;
};

/// Builds initial data, certifies, integrates and summarises. No file output.
RunReport run_config(const RunConfig& config, const solver::RecordObserver& observer = {});

/// run_config followed by CSV / JSON output into `out_dir` (config.output.directory
/// when absent), resolved through resolve_output_dir. Validation happens before
/// any directory is created.
RunReport execute_config(const RunConfig& config, const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Column order: t, sup_norm, F, Fprime, E1, E2, E3, support_left, support_right,
/// schwartz_gap, G_lower_bound, half_int_v2.
void write_csv(std::ostream& os, const RunReport& report);
std::string render_csv(const RunReport& report);

nlohmann::json certificate_json(const certificate::Certificate& cert, const model::ModelParams& params);
nlohmann::json report_json(const RunReport& report);

/// Runs config at n, 2n, 4n, ... (levels runs). Independent runs execute concurrently.
std::vector<RunReport> run_refinement(const RunConfig& base, std::size_t levels);

/// Exit code for a run outcome: 0 Completed, 2 BlowupDetected, 3 NumericalFailure.
int exit_code(solver::RunStatus status) noexcept;

/// Shortest round-trip decimal form.
std::string format_double(double x);

} // namespace hburg::cli
