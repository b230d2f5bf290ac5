// Closed-form quantities of the Wiener disorder model with costly
// observations: the prior/posterior dynamics of the belief process, the
// observation likelihood, and the cost of the best observation-free strategy.
#pragma once

namespace disorder {

/// Problem constants. Beliefs are plain doubles in [0,1]; operations
/// validate their inputs and throw std::invalid_argument on violations.
struct ModelParams {
  double alpha = 1.0;   ///< drift after the disorder (per sqrt(time))
  double lambda = 0.1;  ///< exponential rate of the disorder time
  double c = 0.01;      ///< delay cost per unit time
  double d = 0.001;     ///< cost per observation
  double pi0 = 0.0;     ///< initial belief P(disorder already happened)

  /// Belief threshold lambda / (c + lambda) above which declaring
  /// immediately is optimal for the observation-free strategy.
  double belief_threshold() const { return lambda / (c + lambda); }

  void validate() const;  // throws std::invalid_argument
};

/// Deterministic cost of waiting time t from belief pi and then declaring:
///   (1-pi) e^{-lambda t} + c t - c (1-pi) (1 - e^{-lambda t}) / lambda.
double deterministic_stop_cost(const ModelParams& p, double pi, double t);

/// F(pi), the infimum of deterministic_stop_cost over t >= 0:
///   (c/lambda) (pi + log((lambda+c)(1-pi)/c))   if pi < lambda/(c+lambda)
///   1 - pi                                       otherwise.
double stop_now_cost(const ModelParams& p, double pi);

/// The optimal wait of the observation-free strategy:
///   (1/lambda) log((lambda+c)(1-pi)/c)  below the threshold, 0 above.
double stop_now_optimizer(const ModelParams& p, double pi);

/// Likelihood statistic j(t, pi, x) for an increment x observed over an
/// elapsed time t > 0 starting from belief pi < 1:
///   exp{alpha x + (lambda - alpha^2/2) t} pi/(1-pi)
///     + lambda * integral_0^t exp{(lambda + alpha x / t) u - alpha^2 u^2/(2t)} du.
/// May overflow to +inf for extreme inputs; posterior_after_observation
/// uses a log-domain route and never does.
double likelihood_j(const ModelParams& p, double t, double pi, double x);

/// Posterior belief j/(1+j) after observing increment dx over dt > 0.
/// pi = 1 is absorbing and short-circuits (j is undefined there).
double posterior_after_observation(const ModelParams& p, double pi, double dt,
                                   double dx);

/// Deterministic belief decay between observations:
///   1 - (1-pi) e^{-lambda dt}.
double posterior_drift(const ModelParams& p, double pi, double dt);

namespace detail {

/// log of the integral inside j, evaluated by completing the square and
/// expressing the result through erf/erfcx. Falls back to adaptive Simpson
/// when |alpha| sqrt(t) < 1e-6, where the reformulation degenerates.
double log_j_integral(const ModelParams& p, double t, double x);

/// The same integral by adaptive Simpson quadrature; the independent route
/// used as a cross-check of the closed form.
double j_integral_simpson(const ModelParams& p, double t, double x,
                          double rel_tol);

void require_belief(double pi);

}  // namespace detail

}  // namespace disorder
