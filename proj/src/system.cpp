#include "ladder/system.hpp"

#include <stdexcept>
#include <string>

#include "ladder/state.hpp"

namespace ladder {

LadderSystem build_ladder(int n, const std::vector<double>& lambda) {
  if (n < 2) throw std::invalid_argument("build_ladder: need at least 2 levels");
  if (static_cast<int>(lambda.size()) != n) {
    throw std::invalid_argument("build_ladder: expected " + std::to_string(n) + " energies, got " +
                                std::to_string(lambda.size()));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (lambda[i] == lambda[j]) {
        throw std::invalid_argument("build_ladder: degenerate energies at levels " +
                                    std::to_string(i + 1) + " and " + std::to_string(j + 1));
      }
    }
  }

  LadderSystem system;
  system.lambda = Eigen::Map<const Eigen::VectorXd>(lambda.data(), n);
  system.H0 = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) system.H0(j, j) = lambda[j];

  system.H.reserve(n - 1);
  for (int p = 0; p < n - 1; ++p) {
    Eigen::MatrixXcd coupling = Eigen::MatrixXcd::Zero(n, n);
    coupling(p, p + 1) = Complex(0.0, -1.0);
    coupling(p + 1, p) = Complex(0.0, 1.0);
    system.H.push_back(std::move(coupling));
  }

  // With distinct adjacent energies every coupling moves population, i.e.
  // fails to commute with the drift; verify that numerically anyway.
  for (int p = 0; p < n - 1; ++p) {
    const double commutator_norm = (system.H0 * system.H[p] - system.H[p] * system.H0).norm();
    if (!(commutator_norm > 0.0)) {
      throw std::logic_error("build_ladder: coupling " + std::to_string(p + 1) +
                             " commutes with the drift");
    }
  }
  return system;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return ((m - m.adjoint()).cwiseAbs().maxCoeff()) <= tol;
}

bool hermiticity_check(const LadderSystem& system) {
  if (!is_hermitian(system.H0)) return false;
  for (const auto& coupling : system.H) {
    if (!is_hermitian(coupling)) return false;
  }
  return true;
}

}  // namespace ladder
