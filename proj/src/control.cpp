#include "ladder/control.hpp"

#include <cmath>
#include <stdexcept>

namespace ladder {

const char* to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::Fractional: return "fractional";
    case ControllerKind::Standard: return "standard";
    case ControllerKind::BangBang: return "bangbang";
  }
  throw std::logic_error("to_string: unknown controller kind");
}

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "fractional") return ControllerKind::Fractional;
  if (name == "standard") return ControllerKind::Standard;
  if (name == "bangbang") return ControllerKind::BangBang;
  throw std::invalid_argument("unknown controller kind '" + name +
                              "' (expected fractional, standard or bangbang)");
}

ControllerParams ControllerParams::fractional(std::vector<double> k, std::vector<double> alpha) {
  return ControllerParams{ControllerKind::Fractional, std::move(k), std::move(alpha)};
}

ControllerParams ControllerParams::standard(std::vector<double> k) {
  return ControllerParams{ControllerKind::Standard, std::move(k), {}};
}

ControllerParams ControllerParams::bangbang(std::vector<double> k) {
  return ControllerParams{ControllerKind::BangBang, std::move(k), {}};
}

void ControllerParams::validate(int n) const {
  if (n < 2) throw std::invalid_argument("ControllerParams: need at least 2 levels");
  if (static_cast<int>(k.size()) != n - 1) {
    throw std::invalid_argument("ControllerParams: expected " + std::to_string(n - 1) +
                                " gains, got " + std::to_string(k.size()));
  }
  for (double gain : k) {
    if (!(gain > 0.0)) throw std::invalid_argument("ControllerParams: gains must be positive");
  }
  if (kind == ControllerKind::Fractional) {
    if (alpha.size() != k.size()) {
      throw std::invalid_argument("ControllerParams: expected " + std::to_string(n - 1) +
                                  " exponents, got " + std::to_string(alpha.size()));
    }
    for (double a : alpha) {
      if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("ControllerParams: exponents must lie in (0, 1)");
      }
    }
  }
}

double signum(double x) { return static_cast<double>(x > 0.0) - static_cast<double>(x < 0.0); }

double signed_power(double x, double alpha) {
  if (x == 0.0) return 0.0;
  return signum(x) * std::pow(std::abs(x), alpha);
}

namespace {

double law(const ControllerParams& params, int channel, double s) {
  switch (params.kind) {
    case ControllerKind::Fractional:
      return params.k[channel] * signed_power(s, params.alpha[channel]);
    case ControllerKind::Standard:
      return params.k[channel] * s;
    case ControllerKind::BangBang:
      return params.k[channel] * signum(s);
  }
  throw std::logic_error("control: unknown controller kind");
}

}  // namespace

ControlVector control(const ControllerParams& params, const PolarState& p) {
  const int n = p.dim();
  params.validate(n);
  ControlVector result;
  result.u.resize(n - 1);
  for (int j = 0; j < n - 1; ++j) {
    const double s = p.r()[j] * std::cos(p.phi()[j + 1] - p.phi()[j]);
    result.u[j] = law(params, j, s);
  }
  return result;
}

ControlVector control(const ControllerParams& params, const Eigen::VectorXcd& psi) {
  const int n = static_cast<int>(psi.size());
  params.validate(n);
  ControlVector result;
  result.u.resize(n - 1);
  double r_j = std::abs(psi[0]);
  double phi_j = r_j == 0.0 ? 0.0 : std::arg(psi[0]);
  for (int j = 0; j < n - 1; ++j) {
    const double r_next = std::abs(psi[j + 1]);
    const double phi_next = r_next == 0.0 ? 0.0 : std::arg(psi[j + 1]);
    const double s = r_j * std::cos(phi_next - phi_j);
    result.u[j] = law(params, j, s);
    r_j = r_next;
    phi_j = phi_next;
  }
  return result;
}

double lyapunov_rate_ladder(const PolarState& p, const ControlVector& u) {
  const int n = p.dim();
  if (static_cast<int>(u.u.size()) != n - 1) {
    throw std::invalid_argument("lyapunov_rate_ladder: control size does not fit the state");
  }
  // Grouped so that u_last times its switching argument keeps its sign even
  // in floating point; under the feedback laws the product is >= 0.
  const double s_last = p.r()[n - 2] * std::cos(p.phi()[n - 1] - p.phi()[n - 2]);
  return -2.0 * p.r()[n - 1] * (u.u[n - 2] * s_last);
}

double lyapunov_rate_general(const ComplexState& state, const LadderSystem& system,
                             const ControlVector& u, const TargetState& target) {
  const int n = state.dim();
  if (system.dim() != n || target.dim() != n) {
    throw std::invalid_argument("lyapunov_rate_general: dimensions do not match");
  }
  if (static_cast<int>(u.u.size()) != n - 1) {
    throw std::invalid_argument("lyapunov_rate_general: control size does not fit the state");
  }
  const Eigen::VectorXcd target_ket = target.ket();
  const Complex overlap = state.amplitudes().dot(target_ket);  // <psi|target>
  const double overlap_abs = std::abs(overlap);
  const Complex phase = overlap_abs > 0.0 ? overlap / overlap_abs : Complex(1.0, 0.0);
  double sum = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    const Complex coupling = target_ket.dot(system.H[j] * state.amplitudes());  // <target|H_j|psi>
    sum += u.u[j] * overlap_abs * (phase * coupling).imag();
  }
  return -2.0 * sum;
}

}  // namespace ladder
