#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ladder {

/// An n-level ladder system: diagonal drift Hamiltonian H0 = diag(lambda)
/// with pairwise distinct energies, plus n-1 Hermitian control Hamiltonians,
/// each coupling one pair of adjacent levels:
///   H[p] has entry (p, p+1) = -i and (p+1, p) = +i, all others zero.
/// Matrices are stored densely; the fields are not revalidated after
/// construction, so treat an instance as immutable.
struct LadderSystem {
  Eigen::VectorXd lambda;
  Eigen::MatrixXcd H0;
  std::vector<Eigen::MatrixXcd> H;

  int dim() const { return static_cast<int>(lambda.size()); }
};

/// Builds the ladder Hamiltonians for the given energies. Throws if fewer
/// than two levels are requested, if the energy count does not match n, or if
/// any two energies coincide (the closed-loop analysis needs a non-degenerate
/// drift spectrum). Each coupling is checked numerically to not commute with
/// the drift before the system is returned.
LadderSystem build_ladder(int n, const std::vector<double>& lambda);

/// Entrywise check m == m^H within tol (default exact).
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 0.0);

/// True iff H0 and every coupling Hamiltonian equal their conjugate
/// transposes entrywise.
bool hermiticity_check(const LadderSystem& system);

}  // namespace ladder
