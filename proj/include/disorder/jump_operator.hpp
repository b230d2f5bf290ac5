// The one-step dynamic-programming operator: J0 f(pi, t) is the cost of
// paying d to observe after a wait t and continuing with cost f; J f is the
// minimum of the stop branch F and inf_t J0 f.
//
// The expectation over the observed increment is computed under the change
// of measure that makes the increment N(0,t) regardless of the disorder:
//   E_pi[f(Pi')] = (1-pi) e^{-lambda t} E_N(0,t)[ f(j/(1+j)) (1+j) ],
// evaluated with a Gauss-Hermite rule on y = x/sqrt(t). Since j is affine in
// the odds pi/(1-pi), the node coefficients are independent of pi and are
// precomputed per t (ObservationKernel).
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "disorder/model.hpp"
#include "disorder/quadrature.hpp"
#include "disorder/value_function.hpp"

namespace disorder {

/// Search window and refinement settings for the inner minimization over
/// the waiting time t.
struct TimeSearchConfig {
  double t_lo = 1e-3;
  double t_hi = 0.0;  ///< 0 = auto: max(10 * t^F(0), 50)
  int coarse_points = 128;
  double refine_rel_tol = 1e-6;
  double tie_tol = 1e-12;

  double resolved_t_hi(const ModelParams& p) const;
  /// Logarithmically spaced probe times on [t_lo, resolved_t_hi].
  std::vector<double> probe_times(const ModelParams& p) const;
  void validate(const ModelParams& p) const;
};

/// Per-node coefficients of j at a fixed waiting time t: with y_i the
/// quadrature node and x_i = sqrt(t) y_i,
///   j_i(pi) = odds_coef[i] * pi/(1-pi) + base[i].
struct ObservationKernel {
  double t = 0.0;
  double decay = 1.0;  ///< e^{-lambda t}
  std::vector<double> odds_coef;
  std::vector<double> base;
};

ObservationKernel make_observation_kernel(const ModelParams& p,
                                          const QuadratureRule& rule, double t);

/// E_pi[f(posterior after one observation taken at time t)].
double expectation_after_observation(const ModelParams& p,
                                     const ValueFunction& f, double pi,
                                     double t, const QuadratureRule& rule);

double expectation_with_kernel(const ModelParams& p, const ValueFunction& f,
                               double pi, const ObservationKernel& kernel,
                               const QuadratureRule& rule);

/// J0 f(pi, t) = d + E_pi[f(Pi')] + c t - c (1-pi)(1 - e^{-lambda t})/lambda.
double j0_cost(const ModelParams& p, const ValueFunction& f, double pi,
               double t, const QuadratureRule& rule);

double j0_with_kernel(const ModelParams& p, const ValueFunction& f, double pi,
                      const ObservationKernel& kernel,
                      const QuadratureRule& rule);

struct TimeMinimum {
  double t = 0.0;  ///< 0 encodes the t -> 0+ limit candidate d + f(pi)
  double cost = 0.0;
  bool boundary_clipped = false;  ///< minimizer landed at t_hi (diagnostic)
};

/// Smallest minimizer of t -> J0 f(pi, t) over {0} U [t_lo, t_hi]: coarse
/// log-spaced scan, golden-section refinement of the best bracket, first
/// minimizer kept on ties within tie_tol. The t = 0 candidate carries the
/// limit value d + f(pi).
TimeMinimum minimize_over_t(const ModelParams& p, const ValueFunction& f,
                            double pi, const QuadratureRule& rule,
                            const TimeSearchConfig& search);

/// minimize_over_t against externally precomputed coarse kernels (shared
/// across grid points inside apply_J).
TimeMinimum minimize_with_kernels(const ModelParams& p, const ValueFunction& f,
                                  double pi,
                                  std::span<const ObservationKernel> kernels,
                                  const QuadratureRule& rule,
                                  const TimeSearchConfig& search);

struct JumpResult {
  ValueFunction value;
  /// Optimal waiting time per grid point; +inf where the stop branch F wins.
  std::vector<double> t_map;
  bool any_boundary_clipped = false;
};

/// One application of J on the grid of f. Grid point pi = 1 is pinned to
/// value 0 with t_map = +inf. Data-parallel across grid points.
JumpResult apply_J(const ModelParams& p, const ValueFunction& f,
                   const QuadratureRule& rule, const TimeSearchConfig& search,
                   unsigned n_threads = 1);

}  // namespace disorder
