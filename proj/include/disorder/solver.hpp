// Value iteration f_0 = F, f_{n+1} = J f_n down to the fixed point V, and
// extraction of the observation policy from the final minimizer map.
#pragma once

#include <cstddef>
#include <vector>

#include "disorder/jump_operator.hpp"
#include "disorder/model.hpp"
#include "disorder/quadrature.hpp"
#include "disorder/value_function.hpp"

namespace disorder {

struct SolverOptions {
  double tol = 1e-5;   ///< sup-norm stopping tolerance
  int max_iter = 500;
  unsigned n_threads = 1;
  double eps_strict = 1e-9;  ///< strict-inequality margin for the continuation region
};

struct SolveResult {
  /// f_0 .. f_N (f_0 = F sampled on the grid).
  std::vector<ValueFunction> iterates;
  /// t_maps[n] = argmin map of J0 against f_n, n = 0..N; the last entry is
  /// taken against the fixed point itself.
  std::vector<std::vector<double>> t_maps;
  ValueFunction fixed_point;   ///< f_N
  ValueFunction final_applied; ///< J f_N (used for the residual and policy)
  std::vector<double> residuals;  ///< ||f_{n+1} - f_n|| per step
  double residual = 0.0;          ///< ||J f_N - f_N||
  int iterations = 0;             ///< N
  bool converged = false;
  double max_monotonicity_violation = 0.0;
  bool any_boundary_clipped = false;
};

SolveResult value_iteration(const ModelParams& p, std::size_t grid_size,
                            const QuadratureRule& rule,
                            const TimeSearchConfig& search,
                            const SolverOptions& opts);

struct ContinuationRegion {
  std::vector<std::size_t> indices;  ///< grid indices with V < F - eps_strict
  bool is_interval_from_zero = true; ///< indices form {0, 1, ..., k}
  double pi_star = 0.0;              ///< smallest grid point off the region
};

ContinuationRegion continuation_region(const ValueFunction& v,
                                       const ModelParams& p,
                                       double eps_strict = 1e-9);

/// Observation/stopping policy on the belief grid. t_star is +inf where
/// stopping observations is optimal; terminal_wait is the deterministic
/// wait t^F before declaring once observations cease.
struct Policy {
  std::vector<double> grid;
  std::vector<double> t_star;
  std::vector<double> terminal_wait;
  double pi_star = 0.0;
  bool is_interval = true;

  /// t_star interpolated over finite neighbors; +inf at or beyond pi_star.
  /// Across the finite/infinite jump the finite neighbor value is used
  /// unchanged (interpolating across the jump is meaningless).
  double t_star_at(double pi) const;
  double terminal_wait_at(const ModelParams& p, double pi) const;
};

Policy extract_policy(const SolveResult& result, const ModelParams& p,
                      double eps_strict = 1e-9);

/// t*(pi, f_n) per grid point: the stored minimizer map of iterate n with
/// +inf wherever J f_n does not strictly beat F.
std::vector<double> t_star_for_iterate(const SolveResult& result,
                                       const ModelParams& p, std::size_t n,
                                       double eps_strict = 1e-9);

/// pi*(n) = inf{pi : t*(pi, V_n) = inf} for n = 1..n_max (clamped to the
/// number of available iterates).
std::vector<double> pi_star_sequence(const SolveResult& result,
                                     const ModelParams& p, std::size_t n_max,
                                     double eps_strict = 1e-9);

}  // namespace disorder
