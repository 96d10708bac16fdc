#include "ladder/propagate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ladder {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("IntegratorConfig: t_max must be positive");
  if (!(dt < t_max)) throw std::invalid_argument("IntegratorConfig: dt must be smaller than t_max");
  if (sample_stride < 1) throw std::invalid_argument("IntegratorConfig: sample_stride must be >= 1");
  if (!(norm_tol > 0.0)) throw std::invalid_argument("IntegratorConfig: norm_tol must be positive");
}

namespace {

void rhs_into(const Eigen::VectorXd& lambda, const ControlVector& u, const Eigen::VectorXcd& psi,
              Eigen::VectorXcd& out) {
  const int n = static_cast<int>(psi.size());
  const Complex minus_i(0.0, -1.0);
  for (int j = 0; j < n; ++j) {
    Complex d = minus_i * (lambda[j] * psi[j]);
    if (j > 0) d += u.u[j - 1] * psi[j - 1];
    if (j < n - 1) d -= u.u[j] * psi[j + 1];
    out[j] = d;
  }
}

// One RK4 step of the amplitude vector; control_at supplies the control for
// each stage state, which makes the same core serve the closed loop and any
// fixed pulse.
template <typename ControlFn>
Eigen::VectorXcd rk4_step(const Eigen::VectorXd& lambda, const Eigen::VectorXcd& y, double dt,
                          ControlFn&& control_at) {
  const int n = static_cast<int>(y.size());
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n);
  Eigen::VectorXcd stage(n);

  rhs_into(lambda, control_at(y), y, k1);
  stage = y + (0.5 * dt) * k1;
  rhs_into(lambda, control_at(stage), stage, k2);
  stage = y + (0.5 * dt) * k2;
  rhs_into(lambda, control_at(stage), stage, k3);
  stage = y + dt * k3;
  rhs_into(lambda, control_at(stage), stage, k4);

  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

StepResult finish_step(Eigen::VectorXcd next, const IntegratorConfig& cfg) {
  const double norm = next.norm();
  const double drift = std::abs(norm - 1.0);
  const double failure_threshold = 1e3 * cfg.norm_tol;
  if (!(drift <= failure_threshold)) {
    throw IntegrationError("integration step lost norm: |psi| drifted by " +
                           std::to_string(drift) + " in one step of dt = " +
                           std::to_string(cfg.dt));
  }
  if (cfg.renormalize) next /= norm;
  return StepResult{ComplexState(std::move(next), failure_threshold), drift};
}

void check_dims(int state_dim, const LadderSystem& system, const char* what) {
  if (system.dim() != state_dim) {
    throw std::invalid_argument(std::string(what) + ": system and state dimensions differ");
  }
}

}  // namespace

Eigen::VectorXcd rhs(const ComplexState& state, const LadderSystem& system,
                     const ControlVector& u) {
  check_dims(state.dim(), system, "rhs");
  if (static_cast<int>(u.u.size()) != state.dim() - 1) {
    throw std::invalid_argument("rhs: control size does not fit the state");
  }
  Eigen::VectorXcd out(state.dim());
  rhs_into(system.lambda, u, state.amplitudes(), out);
  return out;
}

StepResult step(const ComplexState& state, const LadderSystem& system,
                const ControllerParams& params, const IntegratorConfig& cfg) {
  cfg.validate();
  check_dims(state.dim(), system, "step");
  params.validate(state.dim());
  auto feedback = [&params](const Eigen::VectorXcd& psi) { return control(params, psi); };
  return finish_step(rk4_step(system.lambda, state.amplitudes(), cfg.dt, feedback), cfg);
}

StepResult step_fixed(const ComplexState& state, const LadderSystem& system,
                      const ControlVector& u, const IntegratorConfig& cfg) {
  cfg.validate();
  check_dims(state.dim(), system, "step_fixed");
  if (static_cast<int>(u.u.size()) != state.dim() - 1) {
    throw std::invalid_argument("step_fixed: control size does not fit the state");
  }
  auto fixed = [&u](const Eigen::VectorXcd&) -> const ControlVector& { return u; };
  return finish_step(rk4_step(system.lambda, state.amplitudes(), cfg.dt, fixed), cfg);
}

Trajectory simulate(const LadderSystem& system, const ControllerParams& params,
                    const ComplexState& initial, const TargetState& target,
                    const IntegratorConfig& cfg) {
  cfg.validate();
  check_dims(initial.dim(), system, "simulate");
  params.validate(initial.dim());
  if (target.dim() != initial.dim()) {
    throw std::invalid_argument("simulate: target and state dimensions differ");
  }

  // Largest number of whole dt steps fitting into the horizon; the epsilon
  // guard keeps an exact-multiple horizon from losing its last step to
  // rounding in t_max / dt.
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));

  Trajectory traj;
  traj.n = initial.dim();
  const std::size_t expected = static_cast<std::size_t>(n_steps / cfg.sample_stride) + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.controls.reserve(expected);
  traj.V.reserve(expected);
  traj.Vdot.reserve(expected);
  traj.norm_drift.reserve(expected);

  ComplexState state = initial;
  double drift = 0.0;
  const double relaxed_tol = 1e3 * cfg.norm_tol;

  auto record = [&](double t) {
    const PolarState p = to_polar(state, relaxed_tol);
    ControlVector u = control(params, p);
    traj.times.push_back(t);
    traj.V.push_back(lyapunov_value(state, target));
    traj.Vdot.push_back(lyapunov_rate_ladder(p, u));
    traj.norm_drift.push_back(drift);
    traj.states.push_back(state);
    traj.controls.push_back(std::move(u));
  };

  record(0.0);
  for (long i = 1; i <= n_steps; ++i) {
    StepResult result = step(state, system, params, cfg);
    state = std::move(result.state);
    drift = result.norm_drift;
    if (i % cfg.sample_stride == 0 || i == n_steps) record(static_cast<double>(i) * cfg.dt);
  }
  return traj;
}

PolarDerivatives rhs_polar(const PolarState& p, const ControlVector& u,
                           const LadderSystem& system, double r_floor) {
  const int n = p.dim();
  check_dims(n, system, "rhs_polar");
  if (static_cast<int>(u.u.size()) != n - 1) {
    throw std::invalid_argument("rhs_polar: control size does not fit the state");
  }
  const auto& r = p.r();
  const auto& phi = p.phi();
  for (int j = 0; j < n; ++j) {
    if (!(r[j] > r_floor)) {
      throw std::domain_error("rhs_polar: amplitude r_" + std::to_string(j + 1) +
                              " is at or below the singular floor " + std::to_string(r_floor));
    }
  }

  PolarDerivatives d;
  d.r_dot.assign(n, 0.0);
  d.phi_dot.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double r_dot = 0.0;
    double r_phi_dot = -system.lambda[j] * r[j];
    if (j > 0) {
      const double dphi = phi[j] - phi[j - 1];
      r_dot += u.u[j - 1] * r[j - 1] * std::cos(dphi);
      r_phi_dot -= u.u[j - 1] * r[j - 1] * std::sin(dphi);
    }
    if (j < n - 1) {
      const double dphi = phi[j + 1] - phi[j];
      r_dot -= u.u[j] * r[j + 1] * std::cos(dphi);
      r_phi_dot -= u.u[j] * r[j + 1] * std::sin(dphi);
    }
    d.r_dot[j] = r_dot;
    d.phi_dot[j] = r_phi_dot / r[j];
  }
  return d;
}

}  // namespace ladder
