#pragma once

#include <optional>
#include <vector>

#include "ladder/control.hpp"
#include "ladder/propagate.hpp"

namespace ladder {

/// Convergence metrics extracted from one closed-loop run. Optional fields
/// stay empty when the corresponding event never happens within the run (or,
/// for the bounds, when the controller is not the fractional one).
struct ConvergenceReport {
  std::optional<double> t_f;  ///< first time V <= epsilon
  double epsilon = 0.0;
  std::optional<double> T1;  ///< first time the target amplitude reaches beta
  std::optional<double> T2;  ///< first sampled time from which r_{n-1} >= r_j holds for all j < n-1
  double beta = 0.0;
  std::optional<double> bound_theorem;
  std::optional<double> bound_simulation;
  double final_population = 0.0;  ///< |<target|psi>|^2 at the last sample
};

/// Worst-case time to convergence once the trajectory stays in the region
/// where r_n >= beta and the level-(n-1) amplitude dominates the lower ones:
///   T <= V0^(1-a) / (K (1-a)),  K = 2 beta k_last / (n-1),  a = (alpha_last+1)/2.
double bound_theorem_form(double v0, double beta, double k_last, double alpha_last, int n);

/// Coarser a-priori form quoted per run:
///   T <= 6 / (k_last (1 - alpha_last)) * V0^((1 - alpha_last)/2).
double bound_simulation_form(double v0, double k_last, double alpha_last);

/// Scans a trajectory for the threshold crossings. t_f and T1 are linearly
/// interpolated between the bracketing samples; T2 is the first sampled time
/// from which the amplitude ordering holds through the end of the run.
ConvergenceReport detect_convergence(const Trajectory& traj, double epsilon, double beta = 0.5);

/// Fills in both bound fields from the run's initial Lyapunov value. Only the
/// fractional law has exponents, so the other kinds leave the fields empty.
/// A run that starts on the target (V0 = 0) gets both bounds set to 0.
void attach_bounds(ConvergenceReport& report, const Trajectory& traj,
                   const ControllerParams& params);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Power-sum inequality behind the finite-time bound: for non-negative r on
/// the unit sphere and alpha in (0, 1),
///   (sum_j r_j^2)^((alpha+1)/2) <= sum_j r_j^(alpha+1),
/// with equality exactly at the basis vectors. holds allows 1e-12 slack.
InequalityCheck power_sum_inequality(const std::vector<double>& r, double alpha,
                                     double norm_tol = kDefaultNormTol);

/// Level population |c_level|^2 at time t, linearly interpolated between the
/// bracketing samples. t must lie inside the sampled range; levels are 0-based.
double population_at(const Trajectory& traj, double t, int level);

/// Trapezoidal integral of the recorded analytic rate over the whole run.
double integrated_rate(const Trajectory& traj);

}  // namespace ladder
