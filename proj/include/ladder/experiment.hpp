#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ladder/analysis.hpp"
#include "ladder/config.hpp"

namespace ladder {

struct ExperimentResult {
  Trajectory trajectory;
  ConvergenceReport report;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
};

/// Runs the configured scenario, writes `<output>.csv` and
/// `<output>-summary.txt`, and returns the trajectory with its report.
/// Outputs are byte-identical across repeated runs of the same config.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Trajectory CSV with header
///   t, re_c1, im_c1, ..., re_cn, im_cn, u_1, ..., u_{n-1}, V, Vdot, norm_drift
/// and 17 significant digits per value, so doubles round-trip exactly.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Flat `key = value` summary mirroring the convergence report; fields whose
/// event never happened are written as `none`.
void write_summary(const ConvergenceReport& report, const ExperimentConfig& config,
                   std::ostream& out);
void write_summary(const ConvergenceReport& report, const ExperimentConfig& config,
                   const std::filesystem::path& path);

struct ComparisonRow {
  ControllerKind kind = ControllerKind::Fractional;
  std::optional<double> t_f;
  double population_at_reference = 0.0;  ///< target population at the reference time
  double max_abs_u = 0.0;
  double total_descent = 0.0;  ///< trapezoidal integral of the analytic rate
};

/// One row per control law, all evaluated at the fractional law's convergence
/// time (or at the end of the horizon when it never converges).
struct ComparisonTable {
  double reference_time = 0.0;
  std::vector<ComparisonRow> rows;
};

/// Runs the same scenario under the fractional, standard and bang-bang laws.
/// The config must carry exponents so the fractional row is well defined.
/// Each run writes `<output>-<kind>.csv` and its summary.
ComparisonTable compare_controllers(const ExperimentConfig& config);

void write_comparison(const ComparisonTable& table, std::ostream& out);

}  // namespace ladder
