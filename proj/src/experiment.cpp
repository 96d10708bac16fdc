#include "ladder/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace ladder {

namespace {

std::string format_value(double value) {
  char buffer[40];
  const int written = std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(written));
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_value(*value) : std::string("none");
}

double parse_csv_value(const std::string& cell) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("trajectory CSV: malformed number '" + cell + "'");
  }
  return value;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return file;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t";
  for (int j = 1; j <= traj.n; ++j) out << ",re_c" << j << ",im_c" << j;
  for (int j = 1; j <= traj.n - 1; ++j) out << ",u_" << j;
  out << ",V,Vdot,norm_drift\n";

  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_value(traj.times[i]);
    const Eigen::VectorXcd& c = traj.states[i].amplitudes();
    for (int j = 0; j < traj.n; ++j) {
      out << ',' << format_value(c[j].real()) << ',' << format_value(c[j].imag());
    }
    for (double u : traj.controls[i].u) out << ',' << format_value(u);
    out << ',' << format_value(traj.V[i]) << ',' << format_value(traj.Vdot[i]) << ','
        << format_value(traj.norm_drift[i]) << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream file = open_for_write(path);
  write_trajectory_csv(traj, file);
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV: missing header");
  const std::vector<std::string> header = split_row(line);
  // Columns: t + 2n amplitudes + (n-1) controls + V, Vdot, norm_drift = 3n + 3.
  if (header.size() < 9 || header.size() % 3 != 0) {
    throw std::runtime_error("trajectory CSV: unexpected column count " +
                             std::to_string(header.size()));
  }
  const int n = static_cast<int>(header.size() / 3) - 1;

  Trajectory traj;
  traj.n = n;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("trajectory CSV: row width does not match the header");
    }
    std::size_t col = 0;
    traj.times.push_back(parse_csv_value(cells[col++]));
    Eigen::VectorXcd c(n);
    for (int j = 0; j < n; ++j) {
      const double re = parse_csv_value(cells[col++]);
      const double im = parse_csv_value(cells[col++]);
      c[j] = Complex(re, im);
    }
    traj.states.emplace_back(std::move(c), 1e-6);
    ControlVector u;
    u.u.reserve(n - 1);
    for (int j = 0; j < n - 1; ++j) u.u.push_back(parse_csv_value(cells[col++]));
    traj.controls.push_back(std::move(u));
    traj.V.push_back(parse_csv_value(cells[col++]));
    traj.Vdot.push_back(parse_csv_value(cells[col++]));
    traj.norm_drift.push_back(parse_csv_value(cells[col++]));
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return read_trajectory_csv(file);
}

void write_summary(const ConvergenceReport& report, const ExperimentConfig& config,
                   std::ostream& out) {
  out << "controller = " << to_string(config.params.kind) << '\n';
  out << "n = " << config.n << '\n';
  out << "epsilon = " << format_value(report.epsilon) << '\n';
  out << "beta = " << format_value(report.beta) << '\n';
  out << "t_f = " << format_optional(report.t_f) << '\n';
  out << "T1 = " << format_optional(report.T1) << '\n';
  out << "T2 = " << format_optional(report.T2) << '\n';
  out << "bound_theorem = " << format_optional(report.bound_theorem) << '\n';
  out << "bound_simulation = " << format_optional(report.bound_simulation) << '\n';
  out << "final_population = " << format_value(report.final_population) << '\n';
}

void write_summary(const ConvergenceReport& report, const ExperimentConfig& config,
                   const std::filesystem::path& path) {
  std::ofstream file = open_for_write(path);
  write_summary(report, config, file);
}

namespace {

ExperimentResult run_one(const ExperimentConfig& config, const ControllerParams& params,
                         const std::string& output_stem) {
  const LadderSystem system = config.make_system();
  ExperimentResult result;
  result.trajectory =
      simulate(system, params, config.initial_state(), config.target(), config.integrator);
  result.report = detect_convergence(result.trajectory, config.epsilon, config.beta);
  attach_bounds(result.report, result.trajectory, params);

  ExperimentConfig labeled = config;
  labeled.params = params;
  result.csv_path = output_stem + ".csv";
  result.summary_path = output_stem + "-summary.txt";
  write_trajectory_csv(result.trajectory, result.csv_path);
  write_summary(result.report, labeled, result.summary_path);
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const std::string stem = config.output.empty() ? "run" : config.output;
  return run_one(config, config.params, stem);
}

ComparisonTable compare_controllers(const ExperimentConfig& config) {
  if (config.params.alpha.empty()) {
    throw ConfigError("compare requires config key 'alpha' for the fractional row");
  }
  const std::string stem = config.output.empty() ? "compare" : config.output;

  const ControllerParams fractional =
      ControllerParams::fractional(config.params.k, config.params.alpha);
  const ControllerParams standard = ControllerParams::standard(config.params.k);
  const ControllerParams bangbang = ControllerParams::bangbang(config.params.k);

  ComparisonTable table;
  std::vector<ExperimentResult> results;
  for (const ControllerParams& params : {fractional, standard, bangbang}) {
    results.push_back(run_one(config, params, stem + "-" + to_string(params.kind)));
  }

  const ExperimentResult& reference = results.front();
  table.reference_time =
      reference.report.t_f ? *reference.report.t_f : reference.trajectory.times.back();

  for (std::size_t i = 0; i < results.size(); ++i) {
    const Trajectory& traj = results[i].trajectory;
    ComparisonRow row;
    row.kind = i == 0 ? ControllerKind::Fractional
                      : (i == 1 ? ControllerKind::Standard : ControllerKind::BangBang);
    row.t_f = results[i].report.t_f;
    row.population_at_reference = population_at(traj, table.reference_time, traj.n - 1);
    for (const ControlVector& u : traj.controls) {
      for (double value : u.u) row.max_abs_u = std::max(row.max_abs_u, std::abs(value));
    }
    row.total_descent = integrated_rate(traj);
    table.rows.push_back(row);
  }
  return table;
}

void write_comparison(const ComparisonTable& table, std::ostream& out) {
  out << "reference_time = " << format_value(table.reference_time) << '\n';
  out << "controller,t_f,population_at_reference,max_abs_u,total_descent\n";
  for (const ComparisonRow& row : table.rows) {
    out << to_string(row.kind) << ',' << format_optional(row.t_f) << ','
        << format_value(row.population_at_reference) << ',' << format_value(row.max_abs_u) << ','
        << format_value(row.total_descent) << '\n';
  }
}

}  // namespace ladder
