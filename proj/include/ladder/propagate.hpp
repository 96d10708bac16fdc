#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ladder/control.hpp"
#include "ladder/state.hpp"
#include "ladder/system.hpp"

namespace ladder {

/// Thrown when one integration step loses more norm than the failure
/// threshold (1000 x norm_tol) allows.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step integration settings (time in atomic units, hbar = 1).
struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 20.0;
  int sample_stride = 1;
  bool renormalize = true;
  double norm_tol = kDefaultNormTol;

  void validate() const;
};

/// Sampled closed-loop history. All columns have equal length and strictly
/// increasing times; norm_drift holds |  |psi| - 1 | measured before the
/// renormalization of the step that produced each sample (0 at t = 0).
struct Trajectory {
  int n = 0;
  std::vector<double> times;
  std::vector<ComplexState> states;
  std::vector<ControlVector> controls;
  std::vector<double> V;
  std::vector<double> Vdot;
  std::vector<double> norm_drift;

  std::size_t size() const { return times.size(); }
};

/// Schrodinger right-hand side -i (H0 + sum_j u_j H_j) psi, evaluated through
/// the ladder coupling structure rather than a dense matrix product.
Eigen::VectorXcd rhs(const ComplexState& state, const LadderSystem& system,
                     const ControlVector& u);

struct StepResult {
  ComplexState state;
  double norm_drift = 0.0;
};

/// One classical 4th-order Runge-Kutta step of length cfg.dt. The feedback
/// law is re-evaluated at every stage state, so the integrated flow is the
/// fully coupled closed loop.
StepResult step(const ComplexState& state, const LadderSystem& system,
                const ControllerParams& params, const IntegratorConfig& cfg);

/// One RK4 step under a fixed control vector (u = 0 gives free evolution).
StepResult step_fixed(const ComplexState& state, const LadderSystem& system,
                      const ControlVector& u, const IntegratorConfig& cfg);

/// Integrates the closed loop over [0, t_max] and samples every sample_stride
/// steps; the initial and final states are always sampled. The step count is
/// the largest number of dt steps fitting into t_max.
Trajectory simulate(const LadderSystem& system, const ControllerParams& params,
                    const ComplexState& initial, const TargetState& target,
                    const IntegratorConfig& cfg);

struct PolarDerivatives {
  std::vector<double> r_dot;
  std::vector<double> phi_dot;
};

/// Amplitude-phase form of the same dynamics. The phase equations divide by
/// r_j, so states with any r_j <= r_floor are rejected with a domain error;
/// use the complex representation there. This route exists as a cross-check,
/// not as the production integrator.
PolarDerivatives rhs_polar(const PolarState& p, const ControlVector& u,
                           const LadderSystem& system, double r_floor = 1e-12);

}  // namespace ladder
