#include "disorder/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "disorder/numerics.hpp"

namespace disorder {

namespace detail {

void require_belief(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::invalid_argument("belief must lie in [0,1], got " +
                                std::to_string(pi));
  }
}

}  // namespace detail

void ModelParams::validate() const {
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be > 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("c must be > 0");
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be > 0");
  detail::require_belief(pi0);
}

double deterministic_stop_cost(const ModelParams& p, double pi, double t) {
  detail::require_belief(pi);
  if (!(t >= 0.0)) throw std::invalid_argument("wait time must be >= 0");
  // -expm1(-x) = 1 - e^{-x}, accurate for small lambda*t.
  const double one_me = -std::expm1(-p.lambda * t);
  return (1.0 - pi) * std::exp(-p.lambda * t) + p.c * t -
         p.c * (1.0 - pi) * one_me / p.lambda;
}

double stop_now_cost(const ModelParams& p, double pi) {
  detail::require_belief(pi);
  if (pi >= p.belief_threshold()) return 1.0 - pi;
  // Log argument is >= 1 on this branch, so the result is nonnegative.
  return p.c / p.lambda *
         (pi + std::log((p.lambda + p.c) * (1.0 - pi) / p.c));
}

double stop_now_optimizer(const ModelParams& p, double pi) {
  detail::require_belief(pi);
  if (pi >= p.belief_threshold()) return 0.0;
  return std::log((p.lambda + p.c) * (1.0 - pi) / p.c) / p.lambda;
}

namespace detail {

namespace {

// Exponent of the pi/(1-pi) term of j.
double signal_exponent(const ModelParams& p, double t, double x) {
  return p.alpha * x + (p.lambda - 0.5 * p.alpha * p.alpha) * t;
}

}  // namespace

double j_integral_simpson(const ModelParams& p, double t, double x,
                          double rel_tol) {
  if (!(t > 0.0)) throw std::invalid_argument("j integral needs t > 0");
  const double b = p.lambda + p.alpha * x / t;
  const double a = 0.5 * p.alpha * p.alpha / t;
  auto integrand = [&](double u) { return std::exp((b - a * u) * u); };
  // Scale the absolute tolerance off a coarse first pass.
  const double rough =
      t / 6.0 * (integrand(0.0) + 4.0 * integrand(0.5 * t) + integrand(t));
  const double tol = std::max(rel_tol * std::abs(rough), 1e-300);
  return adaptive_simpson(integrand, 0.0, t, tol);
}

double log_j_integral(const ModelParams& p, double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("j integral needs t > 0");
  if (std::abs(p.alpha) * std::sqrt(t) < 1e-6) {
    // Near-degenerate Gaussian factor; the integrand is essentially
    // exp(lambda u) and Simpson converges immediately.
    return std::log(j_integral_simpson(p, t, x, 1e-13));
  }
  // integral_0^t exp(b u - a u^2) du with a = alpha^2/(2t), b = lambda + alpha x/t.
  // Completing the square around mu = b/(2a) gives
  //   sqrt(pi)/(2 s) * e^{(s mu)^2} * (erf(s (t - mu)) + erf(s mu)),  s = sqrt(a).
  const double a = 0.5 * p.alpha * p.alpha / t;
  const double b = p.lambda + p.alpha * x / t;
  const double s = std::sqrt(a);
  const double mu = 0.5 * b / a;
  const double z0 = s * mu;
  const double z1 = s * (t - mu);
  const double log_prefactor = 0.5 * std::log(M_PI) - std::log(2.0 * s);
  if (mu >= 0.0 && mu <= t) {
    // Peak inside the interval: both erf terms are nonnegative.
    return log_prefactor + z0 * z0 + std::log(std::erf(z0) + std::erf(z1));
  }
  if (mu < 0.0) {
    // e^{z0^2}(erfc(|z0|) - erfc(z1)) written through erfcx to avoid
    // evaluating the huge exponential against a tiny erfc.
    const double diff =
        erfcx(-z0) - erfcx(z1) * std::exp(z0 * z0 - z1 * z1);
    return log_prefactor + std::log(diff);
  }
  // mu > t: factor out the dominant endpoint weight e^{z0^2 - z1^2}.
  const double diff = erfcx(-z1) - erfcx(z0) * std::exp(z1 * z1 - z0 * z0);
  return log_prefactor + (z0 * z0 - z1 * z1) + std::log(diff);
}

}  // namespace detail

double likelihood_j(const ModelParams& p, double t, double pi, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("likelihood_j needs t > 0");
  detail::require_belief(pi);
  if (pi >= 1.0)
    throw std::invalid_argument("likelihood_j is undefined at pi = 1");
  const double odds = pi / (1.0 - pi);
  return std::exp(detail::signal_exponent(p, t, x)) * odds +
         p.lambda * std::exp(detail::log_j_integral(p, t, x));
}

double posterior_after_observation(const ModelParams& p, double pi, double dt,
                                   double dx) {
  if (!(dt > 0.0)) throw std::invalid_argument("observation gap must be > 0");
  detail::require_belief(pi);
  if (pi >= 1.0) return 1.0;  // absorbing
  // Work with log S, S = (1-pi) j = e^{la} pi + lambda I (1-pi); then
  // j/(1+j) = S / (S + 1 - pi). Immune to overflow of j itself.
  const double la = detail::signal_exponent(p, dt, dx);
  const double lb = std::log(p.lambda) + detail::log_j_integral(p, dt, dx);
  const double log1m = std::log1p(-pi);
  const double log_s = log_sum_exp(la + std::log(pi), lb + log1m);
  return std::exp(log_s - log_sum_exp(log_s, log1m));
}

double posterior_drift(const ModelParams& p, double pi, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("drift time must be >= 0");
  detail::require_belief(pi);
  return pi + (1.0 - pi) * (-std::expm1(-p.lambda * dt));
}

}  // namespace disorder
