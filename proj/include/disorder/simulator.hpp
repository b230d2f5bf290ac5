// Monte Carlo validation: simulate (Theta, X), run observation/stopping
// strategies against sampled paths, and estimate the Bayes risk.
//
// Time is never discretized: the posterior update needs only the increment
// over each inter-observation interval, and the realized costs depend only
// on (tau, theta), so every quantity is exact given the Gaussian draws.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "disorder/model.hpp"
#include "disorder/solver.hpp"

namespace disorder {

/// One realized disorder time plus a lazily sampled path of X, accessed
/// through increments. Repeated requests for the same interval return the
/// cached draw; distinct (disjoint) intervals get independent draws.
class PathSample {
 public:
  PathSample(const ModelParams& p, std::uint64_t seed);

  double theta() const { return theta_; }
  std::uint64_t seed() const { return seed_; }

  /// X_to - X_from ~ N(alpha * |(from,to) ∩ (theta,inf)|, to - from).
  double increment(double from, double to);

 private:
  double alpha_;
  double theta_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::map<std::pair<double, double>, double> cache_;
};

PathSample sample_path(const ModelParams& p, std::uint64_t seed);

/// Raised when a path exceeds the per-path observation cap (a degenerate
/// policy or a bug, not a valid outcome).
struct SimulationGuardError : std::runtime_error {
  SimulationGuardError(const std::string& msg, std::uint64_t seed_,
                       std::uint64_t path_index_)
      : std::runtime_error(msg), seed(seed_), path_index(path_index_) {}
  std::uint64_t seed;
  std::uint64_t path_index;
};

struct StrategyOutcome {
  double declare_time = 0.0;
  int n_observations = 0;
  bool false_alarm = false;
  double delay = 0.0;
  double posterior_terminal = 0.0;
  std::vector<double> observation_times;
  /// 1 - Pi_tau + c * integral of Pi + d * n_observations, with the integral
  /// in closed form over each deterministic-drift segment.
  double posterior_form_cost = 0.0;

  double realized_cost(const ModelParams& p) const {
    return (false_alarm ? 1.0 : 0.0) + p.c * delay + p.d * n_observations;
  }
};

/// Executes the policy on one path: observe after t_star(Pi) while finite,
/// then wait terminal_wait(Pi) and declare. Caps at 10^6 observations.
StrategyOutcome run_strategy(const ModelParams& p, const Policy& policy,
                             PathSample& path);

struct EstimatorStat {
  double mean = 0.0;
  double se = 0.0;
};

struct RiskEstimate {
  std::uint64_t n_paths = 0;
  double total_risk = 0.0;  ///< p_false_alarm + c * mean_delay + d * mean_obs
  double se_total = 0.0;
  EstimatorStat false_alarm;
  EstimatorStat delay;
  EstimatorStat observations;
  /// Posterior-form estimator of the same risk (dual route).
  EstimatorStat posterior_form;
};

/// Monte Carlo estimate over n_paths independent paths with per-path seeds
/// derived from (seed, path index); the aggregation is a deterministic
/// pairwise reduction, so results are bitwise reproducible and independent
/// of the number of worker threads.
RiskEstimate estimate_risk(const ModelParams& p, const Policy& policy,
                           std::uint64_t n_paths, std::uint64_t seed,
                           unsigned n_threads = 1);

/// Baseline: observe every `interval` until the belief reaches `threshold`,
/// then stop observing. threshold = 0 never observes.
Policy periodic_policy(const ModelParams& p, double interval, double threshold,
                       std::size_t grid_size = 201);

Policy never_observe_policy(const ModelParams& p, std::size_t grid_size = 201);

}  // namespace disorder
