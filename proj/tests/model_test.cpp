#include "disorder/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

using disorder::ModelParams;

namespace {

ModelParams fig1_params() {
  ModelParams p;
  p.alpha = 1.0;
  p.lambda = 0.1;
  p.c = 0.01;
  p.d = 0.001;
  return p;
}

// Independent 1-D minimizer used as the oracle for F and t^F: dense scan
// plus bisection-style shrink of the best bracket.
double argmin_scan(const std::function<double(double)>& f, double lo,
                   double hi) {
  const int n = 20000;
  double best_x = lo, best_f = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  double a = std::max(lo, best_x - (hi - lo) / n);
  double b = std::min(hi, best_x + (hi - lo) / n);
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) b = m2; else a = m1;
  }
  return 0.5 * (a + b);
}

}  // namespace

// =============================================================================
// Parameter validation
// =============================================================================

TEST(ModelParams, Validation) {
  ModelParams p = fig1_params();
  EXPECT_NO_THROW(p.validate());
  p.alpha = 0.0;  // degenerate signal is allowed
  EXPECT_NO_THROW(p.validate());
  p.lambda = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = fig1_params();
  p.c = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = fig1_params();
  p.d = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = fig1_params();
  p.pi0 = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

// =============================================================================
// Stop-now cost F and its optimizer
// =============================================================================

TEST(StopNowCost, CertainDisorderCostsNothing) {
  EXPECT_DOUBLE_EQ(disorder::stop_now_cost(fig1_params(), 1.0), 0.0);
}

TEST(StopNowCost, BranchesAgreeAtThreshold) {
  const ModelParams p = fig1_params();
  const double thr = p.belief_threshold();
  EXPECT_NEAR(thr, 10.0 / 11.0, 1e-15);
  // Value at the threshold from both branch formulas.
  const double right = 1.0 - thr;
  const double left =
      p.c / p.lambda * (thr + std::log((p.lambda + p.c) * (1.0 - thr) / p.c));
  EXPECT_NEAR(right, p.c / (p.c + p.lambda), 1e-15);
  EXPECT_NEAR(left, right, 1e-10);
  EXPECT_NEAR(disorder::stop_now_cost(p, thr), 1.0 / 11.0, 1e-12);
  // t^F: left branch hits log(1) = 0 exactly at the threshold.
  const double left_wait =
      std::log((p.lambda + p.c) * (1.0 - thr) / p.c) / p.lambda;
  EXPECT_NEAR(left_wait, 0.0, 1e-10);
  EXPECT_DOUBLE_EQ(disorder::stop_now_optimizer(p, thr), 0.0);
}

TEST(StopNowCost, ClosedFormMatchesNumericalMinimization) {
  const ModelParams p = fig1_params();
  EXPECT_NEAR(disorder::stop_now_cost(p, 0.0), 0.1 * std::log(11.0), 1e-14);
  for (double pi : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) {
    auto objective = [&](double t) {
      return disorder::deterministic_stop_cost(p, pi, t);
    };
    const double t_best = argmin_scan(objective, 0.0, 100.0);
    EXPECT_NEAR(objective(t_best), disorder::stop_now_cost(p, pi), 1e-9)
        << "pi = " << pi;
    EXPECT_NEAR(t_best, disorder::stop_now_optimizer(p, pi), 1e-5)
        << "pi = " << pi;
  }
}

TEST(StopNowOptimizer, ClosedFormValues) {
  const ModelParams p = fig1_params();
  EXPECT_NEAR(disorder::stop_now_optimizer(p, 0.0), 10.0 * std::log(11.0), 1e-12);
  EXPECT_NEAR(disorder::stop_now_optimizer(p, 0.5), 10.0 * std::log(5.5), 1e-12);
  EXPECT_DOUBLE_EQ(disorder::stop_now_optimizer(p, 0.95), 0.0);
}

TEST(StopNowOptimizer, PluggingBackReproducesCost) {
  const ModelParams p = fig1_params();
  for (int i = 0; i <= 100; ++i) {
    const double pi = i / 100.0;
    const double wait = disorder::stop_now_optimizer(p, pi);
    EXPECT_NEAR(disorder::deterministic_stop_cost(p, pi, wait),
                disorder::stop_now_cost(p, pi), 1e-12);
  }
}

TEST(StopNowCost, BoundsAndConcavityOnDenseGrid) {
  const ModelParams p = fig1_params();
  const int n = 1001;
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    const double pi = static_cast<double>(i) / (n - 1);
    values[i] = disorder::stop_now_cost(p, pi);
    EXPECT_GE(values[i], 0.0);
    EXPECT_LE(values[i], 1.0 - pi + 1e-15);
  }
  for (int i = 1; i + 1 < n; ++i) {
    const double chord = 0.5 * (values[i - 1] + values[i + 1]);
    EXPECT_GE(values[i], chord - 1e-12);
  }
}

// =============================================================================
// Likelihood j
// =============================================================================

TEST(LikelihoodJ, Preconditions) {
  const ModelParams p = fig1_params();
  EXPECT_THROW(disorder::likelihood_j(p, 0.0, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(disorder::likelihood_j(p, -1.0, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(disorder::likelihood_j(p, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(LikelihoodJ, UninformativeSignalClosedForm) {
  ModelParams p = fig1_params();
  p.alpha = 0.0;
  const double t = 2.5;
  for (double pi : {0.0, 0.2, 0.5, 0.9}) {
    for (double x : {-1.0, 0.0, 2.0}) {
      const double j = disorder::likelihood_j(p, t, pi, x);
      const double expected = std::exp(p.lambda * t) * pi / (1.0 - pi) +
                              std::expm1(p.lambda * t);
      EXPECT_NEAR(j, expected, 1e-10 * expected);
      EXPECT_NEAR(j / (1.0 + j), 1.0 - (1.0 - pi) * std::exp(-p.lambda * t),
                  1e-12);
    }
  }
}

TEST(LikelihoodJ, ShortTimeLimitIsOdds) {
  const ModelParams p = fig1_params();
  const double pi = 0.37;
  const double j = disorder::likelihood_j(p, 1e-12, pi, 0.0);
  EXPECT_NEAR(j, pi / (1.0 - pi), 1e-9);
  EXPECT_NEAR(disorder::posterior_after_observation(p, pi, 1e-12, 0.0), pi, 1e-9);
}

TEST(LikelihoodJ, ErfFormMatchesAdaptiveSimpson) {
  const ModelParams p = fig1_params();
  // Spread of (t, x) pairs including peak-inside and peak-outside regimes
  // of the completed-square Gaussian.
  const double cases[][2] = {{1.0, 0.7},   {1.0, -3.0}, {0.04, 0.5},
                             {10.0, 8.0},  {10.0, -8.0}, {25.0, 0.0},
                             {0.5, 12.0},  {3.0, -0.2}};
  for (const auto& tc : cases) {
    const double t = tc[0], x = tc[1];
    const double closed = std::exp(disorder::detail::log_j_integral(p, t, x));
    const double simpson = disorder::detail::j_integral_simpson(p, t, x, 1e-12);
    EXPECT_NEAR(closed, simpson, 1e-10 * std::abs(simpson))
        << "t = " << t << ", x = " << x;
  }
}

TEST(LikelihoodJ, AffineInOddsRatio) {
  const ModelParams p = fig1_params();
  const double t = 1.7, x = 0.9;
  const double pis[3] = {0.1, 0.45, 0.8};
  double odds[3], j[3];
  for (int i = 0; i < 3; ++i) {
    odds[i] = pis[i] / (1.0 - pis[i]);
    j[i] = disorder::likelihood_j(p, t, pis[i], x);
  }
  const double slope_a = (j[1] - j[0]) / (odds[1] - odds[0]);
  const double slope_b = (j[2] - j[0]) / (odds[2] - odds[0]);
  EXPECT_NEAR(slope_a, slope_b, 1e-10 * std::abs(slope_a));
}

// =============================================================================
// Posterior updates
// =============================================================================

TEST(Posterior, AbsorbingAtCertainty) {
  const ModelParams p = fig1_params();
  EXPECT_DOUBLE_EQ(disorder::posterior_after_observation(p, 1.0, 2.0, -3.0), 1.0);
  EXPECT_DOUBLE_EQ(disorder::posterior_drift(p, 1.0, 17.0), 1.0);
}

TEST(Posterior, UninformativeObservationEqualsDrift) {
  ModelParams p = fig1_params();
  p.alpha = 0.0;
  EXPECT_NEAR(disorder::posterior_after_observation(p, 0.3, 2.0, 0.4),
              1.0 - 0.7 * std::exp(-0.2), 1e-12);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double pi = unif(rng);
    const double dt = 0.01 + 30.0 * unif(rng);
    const double dx = 10.0 * (unif(rng) - 0.5);
    EXPECT_NEAR(disorder::posterior_after_observation(p, pi, dt, dx),
                disorder::posterior_drift(p, pi, dt), 1e-9);
  }
}

TEST(Posterior, MatchesLikelihoodRoute) {
  const ModelParams p = fig1_params();
  const double j = disorder::likelihood_j(p, 1.0, 0.5, 0.7);
  EXPECT_NEAR(disorder::posterior_after_observation(p, 0.5, 1.0, 0.7),
              j / (1.0 + j), 1e-12);
}

TEST(Posterior, InteriorStaysInterior) {
  const ModelParams p = fig1_params();
  for (double pi : {0.0, 1e-12, 0.5, 1.0 - 1e-12}) {
    for (double dx : {-40.0, -1.0, 0.0, 1.0, 40.0}) {
      const double post = disorder::posterior_after_observation(p, pi, 2.0, dx);
      EXPECT_GE(post, 0.0);
      EXPECT_LE(post, 1.0);
      if (pi > 0.0 && pi < 1.0) {
        EXPECT_GT(post, 0.0);
        EXPECT_LT(post, 1.0);
      }
    }
  }
}

TEST(PosteriorDrift, BasicsAndSemigroup) {
  const ModelParams p = fig1_params();
  EXPECT_DOUBLE_EQ(disorder::posterior_drift(p, 0.42, 0.0), 0.42);
  EXPECT_NEAR(disorder::posterior_drift(p, 0.0, 10.0), 1.0 - std::exp(-1.0),
              1e-15);
  EXPECT_THROW(disorder::posterior_drift(p, 0.5, -1e-9), std::invalid_argument);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double pi = unif(rng);
    const double s = 20.0 * unif(rng);
    const double t = 20.0 * unif(rng);
    const double two_step =
        disorder::posterior_drift(p, disorder::posterior_drift(p, pi, s), t);
    EXPECT_NEAR(two_step, disorder::posterior_drift(p, pi, s + t), 1e-12);
  }
}

TEST(PosteriorDrift, MatchesExponentialTailFrequency) {
  const ModelParams p = fig1_params();
  std::mt19937_64 rng(2024);
  std::exponential_distribution<double> exp_dist(p.lambda);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (exp_dist(rng) <= 10.0) ++hits;
  }
  const double freq = static_cast<double>(hits) / n;
  const double expected = disorder::posterior_drift(p, 0.0, 10.0);
  const double se = std::sqrt(expected * (1.0 - expected) / n);
  EXPECT_NEAR(freq, expected, 3.0 * se);
}
