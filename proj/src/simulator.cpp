#include "disorder/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "disorder/numerics.hpp"
#include "disorder/parallel.hpp"

namespace disorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kObservationCap = 1000000;

// integral_0^dt Pi_s ds from belief pi under deterministic drift.
double belief_integral(const ModelParams& p, double pi, double dt) {
  return dt - (1.0 - pi) * (-std::expm1(-p.lambda * dt)) / p.lambda;
}

EstimatorStat stat_from(std::vector<double>& scratch,
                        const std::vector<double>& values) {
  const std::size_t n = values.size();
  EstimatorStat stat;
  stat.mean = pairwise_sum(values) / static_cast<double>(n);
  if (n < 2) return stat;
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double centered = values[i] - stat.mean;
    scratch[i] = centered * centered;
  }
  const double var = pairwise_sum(scratch) / static_cast<double>(n - 1);
  stat.se = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  return stat;
}

}  // namespace

PathSample::PathSample(const ModelParams& p, std::uint64_t seed)
    : alpha_(p.alpha), seed_(seed), rng_(seed) {
  p.validate();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng_);
  if (u < p.pi0) {
    theta_ = 0.0;
  } else {
    std::exponential_distribution<double> exp_dist(p.lambda);
    theta_ = exp_dist(rng_);
  }
}

double PathSample::increment(double from, double to) {
  if (!(to > from)) throw std::invalid_argument("increment needs to > from");
  const auto key = std::make_pair(from, to);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  const double len = to - from;
  const double drifted = std::max(0.0, to - std::max(from, theta_));
  std::normal_distribution<double> gauss(alpha_ * drifted, std::sqrt(len));
  const double value = gauss(rng_);
  cache_.emplace(key, value);
  return value;
}

PathSample sample_path(const ModelParams& p, std::uint64_t seed) {
  return PathSample(p, seed);
}

StrategyOutcome run_strategy(const ModelParams& p, const Policy& policy,
                             PathSample& path) {
  StrategyOutcome out;
  double now = 0.0;
  double belief = p.pi0;
  double belief_area = 0.0;
  for (;;) {
    const double wait = policy.t_star_at(belief);
    if (std::isinf(wait)) {
      const double terminal = stop_now_optimizer(p, belief);
      belief_area += belief_integral(p, belief, terminal);
      out.declare_time = now + terminal;
      out.posterior_terminal = posterior_drift(p, belief, terminal);
      break;
    }
    if (!(wait > 0.0)) {
      throw std::logic_error("policy returned a nonpositive waiting time");
    }
    if (out.n_observations >= kObservationCap) {
      throw SimulationGuardError(
          "observation cap exceeded (seed " + std::to_string(path.seed()) + ")",
          path.seed(), 0);
    }
    const double dx = path.increment(now, now + wait);
    belief_area += belief_integral(p, belief, wait);
    belief = posterior_after_observation(p, belief, wait, dx);
    now += wait;
    ++out.n_observations;
    out.observation_times.push_back(now);
  }
  out.false_alarm = out.declare_time < path.theta();
  out.delay = std::max(0.0, out.declare_time - path.theta());
  out.posterior_form_cost = 1.0 - out.posterior_terminal +
                            p.c * belief_area + p.d * out.n_observations;
  return out;
}

RiskEstimate estimate_risk(const ModelParams& p, const Policy& policy,
                           std::uint64_t n_paths, std::uint64_t seed,
                           unsigned n_threads) {
  if (n_paths < 1) throw std::invalid_argument("estimate_risk needs n_paths >= 1");
  std::vector<double> fa(n_paths), delay(n_paths), obs(n_paths),
      realized(n_paths), posterior(n_paths);
  constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  parallel_for(n_paths, n_threads, [&](std::size_t i) {
    // i-th output of a SplitMix64 stream started at `seed`; order-insensitive.
    const std::uint64_t path_seed = splitmix64(seed + i * kGamma);
    PathSample path(p, path_seed);
    StrategyOutcome out;
    try {
      out = run_strategy(p, policy, path);
    } catch (const SimulationGuardError& e) {
      throw SimulationGuardError(std::string(e.what()) + " at path index " +
                                     std::to_string(i),
                                 e.seed, i);
    }
    fa[i] = out.false_alarm ? 1.0 : 0.0;
    delay[i] = out.delay;
    obs[i] = out.n_observations;
    realized[i] = out.realized_cost(p);
    posterior[i] = out.posterior_form_cost;
  });

  RiskEstimate estimate;
  estimate.n_paths = n_paths;
  std::vector<double> scratch;
  estimate.false_alarm = stat_from(scratch, fa);
  estimate.delay = stat_from(scratch, delay);
  estimate.observations = stat_from(scratch, obs);
  estimate.posterior_form = stat_from(scratch, posterior);
  const EstimatorStat total = stat_from(scratch, realized);
  // Recombine component means with weights (1, c, d); identical to the mean
  // of the per-path realized cost up to summation order.
  estimate.total_risk = estimate.false_alarm.mean +
                        p.c * estimate.delay.mean +
                        p.d * estimate.observations.mean;
  estimate.se_total = total.se;
  return estimate;
}

Policy periodic_policy(const ModelParams& p, double interval, double threshold,
                       std::size_t grid_size) {
  if (!(interval > 0.0)) throw std::invalid_argument("interval must be > 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [0,1]");
  }
  Policy policy;
  policy.grid = uniform_belief_grid(grid_size);
  policy.t_star.reserve(grid_size);
  policy.terminal_wait.reserve(grid_size);
  for (double pi : policy.grid) {
    policy.t_star.push_back(pi < threshold ? interval : kInf);
    policy.terminal_wait.push_back(stop_now_optimizer(p, pi));
  }
  const auto it =
      std::find_if(policy.t_star.begin(), policy.t_star.end(),
                   [](double t) { return std::isinf(t); });
  policy.pi_star =
      policy.grid[static_cast<std::size_t>(it - policy.t_star.begin())];
  policy.is_interval = true;
  return policy;
}

Policy never_observe_policy(const ModelParams& p, std::size_t grid_size) {
  return periodic_policy(p, 1.0, 0.0, grid_size);
}

}  // namespace disorder
