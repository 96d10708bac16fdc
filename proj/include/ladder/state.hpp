#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ladder {

using Complex = std::complex<double>;

/// Default tolerance on |sum of squared amplitudes - 1| for state construction.
inline constexpr double kDefaultNormTol = 1e-9;

/// Wraps an angle to the interval (-pi, pi].
double wrap_angle(double angle);

/// Unit-norm vector of complex probability amplitudes for an n-level system.
/// Construction rejects vectors with fewer than two levels or with a squared
/// norm further than norm_tol from 1; it never renormalizes silently.
class ComplexState {
 public:
  explicit ComplexState(Eigen::VectorXcd amplitudes, double norm_tol = kDefaultNormTol);

  /// The level-th standard basis state of an n-level system (0-based).
  static ComplexState basis(int n, int level);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(int level) const;

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Amplitude-phase representation of a state: r_j = |c_j| >= 0 and phases in
/// (-pi, pi]. Wherever r_j = 0 the phase is pinned to 0, so the representation
/// is unique. Construction wraps phases and applies the pinning convention.
class PolarState {
 public:
  PolarState(std::vector<double> r, std::vector<double> phi, double norm_tol = kDefaultNormTol);

  int dim() const { return static_cast<int>(r_.size()); }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& phi() const { return phi_; }

 private:
  std::vector<double> r_;
  std::vector<double> phi_;
};

/// The stabilization target: the highest eigenstate of the drift Hamiltonian,
/// i.e. the last standard basis vector of an n-level ladder.
class TargetState {
 public:
  explicit TargetState(int n);

  int dim() const { return n_; }
  /// 1-based level index of the target; always equals dim().
  int index() const { return n_; }
  /// The target written out as a ket.
  Eigen::VectorXcd ket() const;

 private:
  int n_;
};

PolarState to_polar(const ComplexState& state, double norm_tol = kDefaultNormTol);
ComplexState from_polar(const PolarState& state, double norm_tol = kDefaultNormTol);

/// Distance-to-target Lyapunov function V = 1 - |<target|psi>|^2, in [0, 1].
/// Zero exactly on the global-phase equivalence class of the target.
double lyapunov_value(const ComplexState& state, const TargetState& target);

/// Phase difference phi_i - phi_j wrapped to (-pi, pi]. Levels are 0-based.
double relative_phase(const PolarState& p, int i, int j);

/// Uniform random state on the unit sphere (normalized complex Gaussians).
ComplexState random_unit_state(int n, std::mt19937_64& rng);

}  // namespace ladder
