#include "disorder/jump_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "disorder/numerics.hpp"
#include "disorder/parallel.hpp"

namespace disorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Saturation bound for exponent arguments; beyond it the posterior is
// indistinguishable from 1 and the node mass is negligible for any
// configuration passing TimeSearchConfig::validate.
constexpr double kMaxExp = 700.0;

}  // namespace

double TimeSearchConfig::resolved_t_hi(const ModelParams& p) const {
  if (t_hi > 0.0) return t_hi;
  return std::max(10.0 * stop_now_optimizer(p, 0.0), 50.0);
}

void TimeSearchConfig::validate(const ModelParams& p) const {
  if (!(t_lo > 0.0)) throw std::invalid_argument("t_lo must be > 0");
  const double hi = resolved_t_hi(p);
  if (!(hi > t_lo)) throw std::invalid_argument("t_hi must exceed t_lo");
  if (coarse_points < 2)
    throw std::invalid_argument("coarse_points must be >= 2");
  if (!(refine_rel_tol > 0.0))
    throw std::invalid_argument("refine_rel_tol must be > 0");
  if (!(tie_tol >= 0.0)) throw std::invalid_argument("tie_tol must be >= 0");
  if (p.lambda * hi > 300.0) {
    // Keeps every kernel coefficient below the exponent saturation bound.
    throw std::invalid_argument("lambda * t_hi too large (> 300)");
  }
}

std::vector<double> TimeSearchConfig::probe_times(const ModelParams& p) const {
  const double hi = resolved_t_hi(p);
  const int n = coarse_points;
  std::vector<double> times(static_cast<std::size_t>(n));
  const double log_lo = std::log(t_lo);
  const double step = (std::log(hi) - log_lo) / (n - 1);
  for (int i = 0; i < n; ++i) times[static_cast<std::size_t>(i)] = std::exp(log_lo + i * step);
  times.front() = t_lo;
  times.back() = hi;
  return times;
}

ObservationKernel make_observation_kernel(const ModelParams& p,
                                          const QuadratureRule& rule,
                                          double t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel needs t > 0");
  ObservationKernel kernel;
  kernel.t = t;
  kernel.decay = std::exp(-p.lambda * t);
  const std::size_t n = rule.count();
  kernel.odds_coef.resize(n);
  kernel.base.resize(n);
  const double sqrt_t = std::sqrt(t);
  const double drift_term = (p.lambda - 0.5 * p.alpha * p.alpha) * t;
  const double log_lambda = std::log(p.lambda);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sqrt_t * rule.nodes[i];
    const double sig = p.alpha * x + drift_term;
    kernel.odds_coef[i] = std::exp(std::min(sig, kMaxExp));
    const double lb = log_lambda + detail::log_j_integral(p, t, x);
    kernel.base[i] = std::exp(std::min(lb, kMaxExp));
  }
  return kernel;
}

double expectation_with_kernel(const ModelParams& p, const ValueFunction& f,
                               double pi, const ObservationKernel& kernel,
                               const QuadratureRule& rule) {
  detail::require_belief(pi);
  if (pi >= 1.0)
    throw std::invalid_argument("expectation undefined at pi = 1");
  const double q = 1.0 - pi;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.count(); ++i) {
    // (1-pi)(1+j_i) = (1-pi) + odds_coef*pi + base*(1-pi); all terms >= 0.
    const double s = kernel.odds_coef[i] * pi + kernel.base[i] * q;
    const double mass = q + s;
    const double post = std::clamp(s / mass, 0.0, 1.0);
    acc += rule.weights[i] * mass * f(post);
  }
  return kernel.decay * acc;
}

double expectation_after_observation(const ModelParams& p,
                                     const ValueFunction& f, double pi,
                                     double t, const QuadratureRule& rule) {
  if (!(t > 0.0)) throw std::invalid_argument("expectation needs t > 0");
  return expectation_with_kernel(p, f, pi, make_observation_kernel(p, rule, t),
                                 rule);
}

double j0_with_kernel(const ModelParams& p, const ValueFunction& f, double pi,
                      const ObservationKernel& kernel,
                      const QuadratureRule& rule) {
  const double expected_delay =
      kernel.t - (1.0 - pi) * (-std::expm1(-p.lambda * kernel.t)) / p.lambda;
  return p.d + expectation_with_kernel(p, f, pi, kernel, rule) +
         p.c * expected_delay;
}

double j0_cost(const ModelParams& p, const ValueFunction& f, double pi,
               double t, const QuadratureRule& rule) {
  if (!(t > 0.0)) throw std::invalid_argument("j0_cost needs t > 0");
  return j0_with_kernel(p, f, pi, make_observation_kernel(p, rule, t), rule);
}

TimeMinimum minimize_with_kernels(const ModelParams& p, const ValueFunction& f,
                                  double pi,
                                  std::span<const ObservationKernel> kernels,
                                  const QuadratureRule& rule,
                                  const TimeSearchConfig& search) {
  detail::require_belief(pi);
  if (pi >= 1.0)
    throw std::invalid_argument("minimize_over_t undefined at pi = 1");
  if (kernels.empty())
    throw std::invalid_argument("minimize_over_t needs probe kernels");

  // Limit value J0 f(pi, 0) = d + f(pi); carried by the sentinel t = 0 and
  // preferred on ties (smallest minimizer).
  TimeMinimum best{0.0, p.d + f(pi), false};
  std::size_t best_idx = kernels.size();  // sentinel: t = 0 candidate
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const double cost = j0_with_kernel(p, f, pi, kernels[i], rule);
    if (cost < best.cost - search.tie_tol) {
      best.cost = cost;
      best.t = kernels[i].t;
      best_idx = i;
    }
  }

  if (best_idx < kernels.size()) {
    // Golden-section refinement of the bracket around the best probe.
    auto objective = [&](double t) {
      return j0_with_kernel(p, f, pi, make_observation_kernel(p, rule, t),
                            rule);
    };
    double a = kernels[best_idx > 0 ? best_idx - 1 : 0].t;
    double b = kernels[std::min(best_idx + 1, kernels.size() - 1)].t;
    if (b > a) {
      constexpr double invphi = 0.6180339887498949;
      constexpr double invphi2 = 1.0 - invphi;
      double h = b - a;
      double x1 = a + invphi2 * h, x2 = a + invphi * h;
      double f1 = objective(x1), f2 = objective(x2);
      for (int iter = 0; iter < 200 && h > search.refine_rel_tol * b; ++iter) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          h = b - a;
          x1 = a + invphi2 * h;
          f1 = objective(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          h = b - a;
          x2 = a + invphi * h;
          f2 = objective(x2);
        }
      }
      double t_ref = f1 <= f2 ? x1 : x2;
      double c_ref = std::min(f1, f2);
      if (c_ref < best.cost - search.tie_tol ||
          (std::abs(c_ref - best.cost) <= search.tie_tol && t_ref < best.t)) {
        best.t = t_ref;
        best.cost = c_ref;
      }
    }
  }

  const double hi = kernels.back().t;
  best.boundary_clipped = best.t >= hi * (1.0 - 16.0 * search.refine_rel_tol);
  return best;
}

TimeMinimum minimize_over_t(const ModelParams& p, const ValueFunction& f,
                            double pi, const QuadratureRule& rule,
                            const TimeSearchConfig& search) {
  search.validate(p);
  std::vector<ObservationKernel> kernels;
  for (double t : search.probe_times(p)) {
    kernels.push_back(make_observation_kernel(p, rule, t));
  }
  return minimize_with_kernels(p, f, pi, kernels, rule, search);
}

JumpResult apply_J(const ModelParams& p, const ValueFunction& f,
                   const QuadratureRule& rule, const TimeSearchConfig& search,
                   unsigned n_threads) {
  search.validate(p);
  const std::size_t n = f.size();
  if (n < 2 || f.grid.back() != 1.0) {
    throw std::invalid_argument("apply_J needs a grid ending at pi = 1");
  }
  std::vector<ObservationKernel> kernels;
  kernels.reserve(static_cast<std::size_t>(search.coarse_points));
  for (double t : search.probe_times(p)) {
    kernels.push_back(make_observation_kernel(p, rule, t));
  }

  JumpResult result;
  result.value.grid = f.grid;
  result.value.values.assign(n, 0.0);
  result.t_map.assign(n, kInf);
  std::vector<char> clipped(n, 0);

  parallel_for(n, n_threads, [&](std::size_t i) {
    const double pi = f.grid[i];
    if (pi >= 1.0) return;  // F(1) = 0 and the observe branch costs >= d
    const double stop = stop_now_cost(p, pi);
    const TimeMinimum tm =
        minimize_with_kernels(p, f, pi, kernels, rule, search);
    if (tm.cost < stop - search.tie_tol) {
      result.value.values[i] = std::max(tm.cost, 0.0);
      result.t_map[i] = tm.t;
      clipped[i] = tm.boundary_clipped ? 1 : 0;
    } else {
      result.value.values[i] = stop;
    }
  });

  result.any_boundary_clipped =
      std::any_of(clipped.begin(), clipped.end(), [](char c) { return c != 0; });
  return result;
}

}  // namespace disorder
