#include "ladder/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace ladder {

namespace {

constexpr double kPi = std::numbers::pi;

void check_norm(double norm_sq, double norm_tol, const char* what) {
  if (!(norm_tol > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": norm_tol must be positive");
  }
  if (!(std::abs(norm_sq - 1.0) <= norm_tol)) {
    throw std::invalid_argument(std::string(what) + ": squared norm " + std::to_string(norm_sq) +
                                " deviates from 1 by more than " + std::to_string(norm_tol));
  }
}

}  // namespace

double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * kPi);  // lands in [-pi, pi]
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

ComplexState::ComplexState(Eigen::VectorXcd amplitudes, double norm_tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) {
    throw std::invalid_argument("ComplexState: need at least 2 levels");
  }
  check_norm(amplitudes_.squaredNorm(), norm_tol, "ComplexState");
}

ComplexState ComplexState::basis(int n, int level) {
  if (n < 2) throw std::invalid_argument("ComplexState::basis: need at least 2 levels");
  if (level < 0 || level >= n) throw std::out_of_range("ComplexState::basis: level out of range");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  c[level] = 1.0;
  return ComplexState(std::move(c));
}

Complex ComplexState::amplitude(int level) const {
  if (level < 0 || level >= dim()) throw std::out_of_range("ComplexState: level out of range");
  return amplitudes_[level];
}

PolarState::PolarState(std::vector<double> r, std::vector<double> phi, double norm_tol)
    : r_(std::move(r)), phi_(std::move(phi)) {
  if (r_.size() < 2) throw std::invalid_argument("PolarState: need at least 2 levels");
  if (phi_.size() != r_.size()) throw std::invalid_argument("PolarState: r and phi sizes differ");
  double norm_sq = 0.0;
  for (double amplitude : r_) {
    if (!(amplitude >= 0.0)) {
      throw std::invalid_argument("PolarState: amplitudes must be non-negative");
    }
    norm_sq += amplitude * amplitude;
  }
  check_norm(norm_sq, norm_tol, "PolarState");
  for (std::size_t j = 0; j < r_.size(); ++j) {
    phi_[j] = r_[j] == 0.0 ? 0.0 : wrap_angle(phi_[j]);
  }
}

TargetState::TargetState(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("TargetState: need at least 2 levels");
}

Eigen::VectorXcd TargetState::ket() const {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n_);
  e[n_ - 1] = 1.0;
  return e;
}

PolarState to_polar(const ComplexState& state, double norm_tol) {
  const int n = state.dim();
  std::vector<double> r(n);
  std::vector<double> phi(n);
  for (int j = 0; j < n; ++j) {
    const Complex c = state.amplitudes()[j];
    r[j] = std::abs(c);
    phi[j] = r[j] == 0.0 ? 0.0 : std::arg(c);
  }
  return PolarState(std::move(r), std::move(phi), norm_tol);
}

ComplexState from_polar(const PolarState& state, double norm_tol) {
  Eigen::VectorXcd c(state.dim());
  for (int j = 0; j < state.dim(); ++j) {
    c[j] = std::polar(state.r()[j], state.phi()[j]);
  }
  return ComplexState(std::move(c), norm_tol);
}

double lyapunov_value(const ComplexState& state, const TargetState& target) {
  if (state.dim() != target.dim()) {
    throw std::invalid_argument("lyapunov_value: state and target dimensions differ");
  }
  const double overlap_sq = std::norm(state.amplitudes()[state.dim() - 1]);
  return std::max(0.0, 1.0 - overlap_sq);
}

double relative_phase(const PolarState& p, int i, int j) {
  if (i < 0 || i >= p.dim() || j < 0 || j >= p.dim()) {
    throw std::out_of_range("relative_phase: level index out of range");
  }
  return wrap_angle(p.phi()[i] - p.phi()[j]);
}

ComplexState random_unit_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd c(n);
  for (int j = 0; j < n; ++j) c[j] = Complex(gauss(rng), gauss(rng));
  c /= c.norm();
  return ComplexState(std::move(c));
}

}  // namespace ladder
