#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ladder/state.hpp"
#include "ladder/system.hpp"

namespace ladder {

enum class ControllerKind { Fractional, Standard, BangBang };

const char* to_string(ControllerKind kind);
ControllerKind controller_kind_from_string(const std::string& name);

/// Feedback gains for the three control laws. The exponents alpha are used by
/// the fractional law only and must then lie in (0, 1) channelwise.
struct ControllerParams {
  ControllerKind kind = ControllerKind::Fractional;
  std::vector<double> k;
  std::vector<double> alpha;

  static ControllerParams fractional(std::vector<double> k, std::vector<double> alpha);
  static ControllerParams standard(std::vector<double> k);
  static ControllerParams bangbang(std::vector<double> k);

  /// Throws unless the sizes fit an n-level ladder and every gain is positive
  /// (and, for the fractional law, every exponent lies in (0, 1)).
  void validate(int n) const;
};

/// Control field amplitudes, one per adjacent-level coupling.
struct ControlVector {
  std::vector<double> u;
};

/// sign(x) with sign(0) = 0.
double signum(double x);

/// sign(x) * |x|^alpha. Fractional powers are never taken of a negative base.
double signed_power(double x, double alpha);

/// Evaluates the feedback law. The switching argument of channel j is
/// s_j = r_j cos(phi_{j+1} - phi_j); the laws are
///   fractional: u_j = k_j sign(s_j) |s_j|^alpha_j
///   standard:   u_j = k_j s_j
///   bangbang:   u_j = k_j sign(s_j)
/// All three vanish exactly on the switching locus s_j = 0, so |u_j| <= k_j.
ControlVector control(const ControllerParams& params, const PolarState& p);

/// Same law evaluated directly on a complex amplitude vector. The norm is not
/// checked here; integrator stage states sit slightly off the unit sphere.
ControlVector control(const ControllerParams& params, const Eigen::VectorXcd& psi);

/// Analytic decay rate of the Lyapunov function along the closed loop of a
/// ladder system. Only the top coupling contributes:
///   Vdot = -2 u_{n-1} r_n r_{n-1} cos(phi_n - phi_{n-1}).
/// Under any of the three laws the sampled value is <= 0 exactly, because the
/// law gives u_{n-1} the sign of its switching argument.
double lyapunov_rate_ladder(const PolarState& p, const ControlVector& u);

/// The same rate from the general inner-product form
///   Vdot = -2 sum_j u_j |<psi|target>| Im(e^{i arg<psi|target>} <target|H_j|psi>),
/// evaluated with the full control Hamiltonians. Kept as an independent route
/// for cross-checking the ladder expression. The phase factor is taken as 1
/// when the overlap vanishes.
double lyapunov_rate_general(const ComplexState& state, const LadderSystem& system,
                             const ControlVector& u, const TargetState& target);

}  // namespace ladder
