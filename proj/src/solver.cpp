#include "disorder/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace disorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_increase(const ValueFunction& prev, const ValueFunction& next) {
  double worst = -kInf;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    worst = std::max(worst, next.values[i] - prev.values[i]);
  }
  return worst;
}

// +inf wherever the applied value does not strictly beat the stop branch.
std::vector<double> filter_t_map(const std::vector<double>& t_map,
                                 const ValueFunction& applied,
                                 const ModelParams& p, double eps_strict) {
  std::vector<double> filtered(t_map);
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    const double stop = stop_now_cost(p, applied.grid[i]);
    if (!(applied.values[i] < stop - eps_strict)) filtered[i] = kInf;
  }
  return filtered;
}

double first_infinite_abscissa(const std::vector<double>& grid,
                               const std::vector<double>& t_star) {
  for (std::size_t i = 0; i < t_star.size(); ++i) {
    if (std::isinf(t_star[i])) return grid[i];
  }
  return grid.back();
}

}  // namespace

SolveResult value_iteration(const ModelParams& p, std::size_t grid_size,
                            const QuadratureRule& rule,
                            const TimeSearchConfig& search,
                            const SolverOptions& opts) {
  p.validate();
  search.validate(p);
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tol must be > 0");
  if (opts.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  SolveResult result;
  result.iterates.push_back(sample_on_grid(
      uniform_belief_grid(grid_size),
      [&](double pi) { return stop_now_cost(p, pi); }));

  for (int n = 0; n < opts.max_iter; ++n) {
    const ValueFunction& current = result.iterates.back();
    JumpResult step = apply_J(p, current, rule, search, opts.n_threads);
    result.any_boundary_clipped |= step.any_boundary_clipped;
    const double delta = sup_norm_diff(current, step.value);
    result.max_monotonicity_violation = std::max(
        result.max_monotonicity_violation, max_increase(current, step.value));
    result.residuals.push_back(delta);
    result.t_maps.push_back(std::move(step.t_map));
    result.iterates.push_back(std::move(step.value));
    result.iterations = n + 1;
    if (delta <= opts.tol) {
      result.converged = true;
      break;
    }
  }
  if (result.max_monotonicity_violation > 1e-6) {
    throw std::logic_error("value iteration increased an iterate; operator bug");
  }

  result.fixed_point = result.iterates.back();
  // One extra application: reported residual ||J V - V|| and the minimizer
  // map against the fixed point itself, which the policy uses.
  JumpResult last = apply_J(p, result.fixed_point, rule, search, opts.n_threads);
  result.any_boundary_clipped |= last.any_boundary_clipped;
  result.residual = sup_norm_diff(result.fixed_point, last.value);
  result.final_applied = std::move(last.value);
  result.t_maps.push_back(std::move(last.t_map));
  return result;
}

ContinuationRegion continuation_region(const ValueFunction& v,
                                       const ModelParams& p,
                                       double eps_strict) {
  ContinuationRegion region;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.values[i] < stop_now_cost(p, v.grid[i]) - eps_strict) {
      region.indices.push_back(i);
    }
  }
  region.is_interval_from_zero = true;
  for (std::size_t k = 0; k < region.indices.size(); ++k) {
    if (region.indices[k] != k) {
      region.is_interval_from_zero = false;
      break;
    }
  }
  std::size_t first_off = 0;
  while (first_off < region.indices.size() &&
         region.indices[first_off] == first_off) {
    ++first_off;
  }
  region.pi_star = v.grid[first_off];
  return region;
}

double Policy::t_star_at(double pi) const {
  if (pi >= pi_star) return kInf;
  if (pi <= grid.front()) return t_star.front();
  const auto it = std::upper_bound(grid.begin(), grid.end(), pi);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const bool lo_inf = std::isinf(t_star[lo]);
  const bool hi_inf = hi >= t_star.size() || std::isinf(t_star[hi]);
  if (lo_inf && hi_inf) return kInf;
  if (lo_inf) return t_star[hi];
  if (hi_inf) return t_star[lo];
  const double w = (pi - grid[lo]) / (grid[hi] - grid[lo]);
  return t_star[lo] + w * (t_star[hi] - t_star[lo]);
}

double Policy::terminal_wait_at(const ModelParams& p, double pi) const {
  return stop_now_optimizer(p, pi);
}

Policy extract_policy(const SolveResult& result, const ModelParams& p,
                      double eps_strict) {
  Policy policy;
  policy.grid = result.fixed_point.grid;
  policy.t_star = filter_t_map(result.t_maps.back(), result.final_applied, p,
                               eps_strict);
  policy.terminal_wait.reserve(policy.grid.size());
  for (double pi : policy.grid) {
    policy.terminal_wait.push_back(stop_now_optimizer(p, pi));
  }
  policy.pi_star = first_infinite_abscissa(policy.grid, policy.t_star);
  const ContinuationRegion region =
      continuation_region(result.final_applied, p, eps_strict);
  policy.is_interval = region.is_interval_from_zero;
  return policy;
}

std::vector<double> t_star_for_iterate(const SolveResult& result,
                                       const ModelParams& p, std::size_t n,
                                       double eps_strict) {
  if (n >= result.t_maps.size()) {
    throw std::invalid_argument("t_star_for_iterate: iterate index out of range");
  }
  const ValueFunction& applied = n + 1 < result.iterates.size()
                                     ? result.iterates[n + 1]
                                     : result.final_applied;
  return filter_t_map(result.t_maps[n], applied, p, eps_strict);
}

std::vector<double> pi_star_sequence(const SolveResult& result,
                                     const ModelParams& p, std::size_t n_max,
                                     double eps_strict) {
  std::vector<double> thresholds;
  const std::size_t last = std::min(n_max + 1, result.t_maps.size());
  for (std::size_t n = 1; n < last; ++n) {
    const std::vector<double> t_star = t_star_for_iterate(result, p, n, eps_strict);
    thresholds.push_back(
        first_infinite_abscissa(result.fixed_point.grid, t_star));
  }
  return thresholds;
}

}  // namespace disorder
