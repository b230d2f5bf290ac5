#include "disorder/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace disorder {

QuadratureRule gauss_hermite(std::size_t n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  // Jacobi matrix of the probabilists' Hermite recurrence: zero diagonal,
  // off-diagonal sqrt(k). Eigenvalues are the nodes; squared first
  // eigenvector components are the N(0,1)-normalized weights.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) {
    const double off = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite: eigensolver failed");
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    const double v0 = solver.eigenvectors()(0, static_cast<Eigen::Index>(i));
    rule.weights[i] = v0 * v0;
  }

  // Eigenvalues come back sorted; pin the symmetry about zero exactly and
  // renormalize the total mass to one.
  for (std::size_t i = 0, j = n - 1; i < j; ++i, --j) {
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -node;
    rule.nodes[j] = node;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  const double total =
      std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace disorder
