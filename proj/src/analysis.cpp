#include "ladder/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ladder {

namespace {

void check_v0(double v0, const char* what) {
  if (!(v0 > 0.0 && v0 <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": initial Lyapunov value must lie in (0, 1]");
  }
}

void check_gain(double k_last, const char* what) {
  if (!(k_last > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": gain must be positive");
  }
}

void check_exponent(double alpha_last, const char* what) {
  if (!(alpha_last > 0.0 && alpha_last < 1.0)) {
    throw std::invalid_argument(std::string(what) + ": exponent must lie in (0, 1)");
  }
}

double amplitude(const Trajectory& traj, std::size_t i, int level) {
  return std::abs(traj.states[i].amplitudes()[level]);
}

}  // namespace

double bound_theorem_form(double v0, double beta, double k_last, double alpha_last, int n) {
  check_v0(v0, "bound_theorem_form");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("bound_theorem_form: beta must lie in (0, 1)");
  }
  check_gain(k_last, "bound_theorem_form");
  check_exponent(alpha_last, "bound_theorem_form");
  if (n < 2) throw std::invalid_argument("bound_theorem_form: need at least 2 levels");

  const double rate_constant = 2.0 * beta * k_last / static_cast<double>(n - 1);
  const double homogeneity = 0.5 * (alpha_last + 1.0);
  return std::pow(v0, 1.0 - homogeneity) / (rate_constant * (1.0 - homogeneity));
}

double bound_simulation_form(double v0, double k_last, double alpha_last) {
  check_v0(v0, "bound_simulation_form");
  check_gain(k_last, "bound_simulation_form");
  check_exponent(alpha_last, "bound_simulation_form");
  return 6.0 / (k_last * (1.0 - alpha_last)) * std::pow(v0, 0.5 * (1.0 - alpha_last));
}

ConvergenceReport detect_convergence(const Trajectory& traj, double epsilon, double beta) {
  if (traj.size() == 0) throw std::invalid_argument("detect_convergence: empty trajectory");
  if (!(epsilon > 0.0)) throw std::invalid_argument("detect_convergence: epsilon must be positive");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("detect_convergence: beta must lie in (0, 1)");
  }

  ConvergenceReport report;
  report.epsilon = epsilon;
  report.beta = beta;
  const int n = traj.n;
  const std::size_t count = traj.size();
  report.final_population = std::norm(traj.states[count - 1].amplitudes()[n - 1]);

  // First downward crossing of V through epsilon, interpolated linearly.
  for (std::size_t i = 0; i < count; ++i) {
    if (traj.V[i] <= epsilon) {
      if (i == 0) {
        report.t_f = traj.times[0];
      } else {
        const double span = traj.V[i - 1] - traj.V[i];
        const double fraction = (traj.V[i - 1] - epsilon) / span;
        report.t_f = traj.times[i - 1] + fraction * (traj.times[i] - traj.times[i - 1]);
      }
      break;
    }
  }

  // First upward crossing of the target amplitude through beta.
  for (std::size_t i = 0; i < count; ++i) {
    const double r_n = amplitude(traj, i, n - 1);
    if (r_n >= beta) {
      if (i == 0) {
        report.T1 = traj.times[0];
      } else {
        const double previous = amplitude(traj, i - 1, n - 1);
        const double fraction = (beta - previous) / (r_n - previous);
        report.T1 = traj.times[i - 1] + fraction * (traj.times[i] - traj.times[i - 1]);
      }
      break;
    }
  }

  // Earliest sample from which r_{n-1} >= r_j keeps holding for every lower
  // level through the end of the run; vacuous for two levels.
  if (n == 2) {
    report.T2 = traj.times[0];
  } else {
    std::ptrdiff_t last_violation = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(count) - 1; i >= 0; --i) {
      const double r_top_neighbor = amplitude(traj, i, n - 2);
      bool ordered = true;
      for (int j = 0; j < n - 2 && ordered; ++j) {
        ordered = r_top_neighbor >= amplitude(traj, i, j);
      }
      if (!ordered) {
        last_violation = i;
        break;
      }
    }
    if (last_violation < 0) {
      report.T2 = traj.times[0];
    } else if (last_violation + 1 < static_cast<std::ptrdiff_t>(count)) {
      report.T2 = traj.times[last_violation + 1];
    }
  }

  return report;
}

void attach_bounds(ConvergenceReport& report, const Trajectory& traj,
                   const ControllerParams& params) {
  if (params.kind != ControllerKind::Fractional) return;
  if (traj.size() == 0) throw std::invalid_argument("attach_bounds: empty trajectory");
  const double v0 = traj.V.front();
  if (v0 <= 0.0) {
    report.bound_theorem = 0.0;
    report.bound_simulation = 0.0;
    return;
  }
  report.bound_theorem =
      bound_theorem_form(v0, report.beta, params.k.back(), params.alpha.back(), traj.n);
  report.bound_simulation = bound_simulation_form(v0, params.k.back(), params.alpha.back());
}

InequalityCheck power_sum_inequality(const std::vector<double>& r, double alpha,
                                     double norm_tol) {
  if (r.empty()) throw std::invalid_argument("power_sum_inequality: empty vector");
  check_exponent(alpha, "power_sum_inequality");
  double sum_sq = 0.0;
  for (double value : r) {
    if (!(value >= 0.0)) {
      throw std::invalid_argument("power_sum_inequality: entries must be non-negative");
    }
    sum_sq += value * value;
  }
  if (!(std::abs(sum_sq - 1.0) <= norm_tol)) {
    throw std::invalid_argument("power_sum_inequality: vector is not on the unit sphere");
  }

  InequalityCheck check;
  check.lhs = std::pow(sum_sq, 0.5 * (alpha + 1.0));
  check.rhs = 0.0;
  for (double value : r) check.rhs += std::pow(value, alpha + 1.0);
  check.holds = check.lhs <= check.rhs + 1e-12;
  return check;
}

double population_at(const Trajectory& traj, double t, int level) {
  if (traj.size() == 0) throw std::invalid_argument("population_at: empty trajectory");
  if (level < 0 || level >= traj.n) throw std::out_of_range("population_at: level out of range");
  if (!(t >= traj.times.front() && t <= traj.times.back())) {
    throw std::out_of_range("population_at: time outside the sampled range");
  }
  const auto upper = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  const std::size_t i = static_cast<std::size_t>(upper - traj.times.begin());
  const double pop_i = std::norm(traj.states[i].amplitudes()[level]);
  if (i == 0 || traj.times[i] == t) return pop_i;
  const double pop_prev = std::norm(traj.states[i - 1].amplitudes()[level]);
  const double fraction = (t - traj.times[i - 1]) / (traj.times[i] - traj.times[i - 1]);
  return pop_prev + fraction * (pop_i - pop_prev);
}

double integrated_rate(const Trajectory& traj) {
  if (traj.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    total += 0.5 * (traj.Vdot[i] + traj.Vdot[i - 1]) * (traj.times[i] - traj.times[i - 1]);
  }
  return total;
}

}  // namespace ladder
