#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace disorder {

/// Concave cost function on [0,1] stored as values on a strictly increasing
/// belief grid (endpoints included) with piecewise-linear interpolation.
/// Class membership: 0 <= values[i] <= 1 - grid[i] and values.back() == 0.
struct ValueFunction {
  std::vector<double> grid;
  std::vector<double> values;

  /// Piecewise-linear evaluation; arguments are clamped to [grid.front(),
  /// grid.back()].
  double operator()(double pi) const;

  std::size_t size() const { return grid.size(); }
};

/// n uniformly spaced beliefs on [0,1], endpoints exact.
std::vector<double> uniform_belief_grid(std::size_t n);

/// Samples fn on the grid.
ValueFunction sample_on_grid(std::vector<double> grid,
                             const std::function<double(double)>& fn);

/// Diagnostics for membership in the solver's function class.
struct FunctionClassReport {
  double max_lower_violation = 0.0;      // below 0
  double max_upper_violation = 0.0;      // above 1 - pi
  double max_concavity_violation = 0.0;  // midpoint below the chord
  double end_value = 0.0;                // value at pi = 1

  bool ok(double tol) const {
    return max_lower_violation <= tol && max_upper_violation <= tol &&
           max_concavity_violation <= tol && end_value <= tol;
  }
};

FunctionClassReport check_function_class(const ValueFunction& f);

/// Largest amount by which a middle value falls below the chord of its
/// neighbors, over all consecutive grid triples (0 if concave).
double max_concavity_violation(const std::vector<double>& grid,
                               const std::vector<double>& values);

/// Sup-norm distance between two functions on the same grid.
double sup_norm_diff(const ValueFunction& a, const ValueFunction& b);

}  // namespace disorder
