#pragma once

#include <cstddef>
#include <vector>

namespace disorder {

/// Nodes and weights integrating against the standard normal density:
/// sum_i w_i g(y_i) ~ E[g(Y)], Y ~ N(0,1). Weights are positive and sum to
/// one; nodes are symmetric about zero.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t count() const { return nodes.size(); }
};

/// Gauss-Hermite rule of the given order in probabilists' normalization,
/// computed by eigendecomposition of the Jacobi matrix (Golub-Welsch).
/// Exact for polynomials up to degree 2n-1 under the N(0,1) weight.
QuadratureRule gauss_hermite(std::size_t n);

}  // namespace disorder
