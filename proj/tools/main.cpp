// Command-line front end: solve the detection problem, extract policies,
// run Monte Carlo evaluations, and sweep cost parameters. Emits CSV figure
// data plus a resolved-config JSON for provenance.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disorder/config.hpp"
#include "disorder/csv.hpp"
#include "disorder/model.hpp"
#include "disorder/quadrature.hpp"
#include "disorder/simulator.hpp"
#include "disorder/solver.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitSimulationGuard = 4;

struct CliOptions {
  std::string config_path;
  std::optional<double> alpha, lambda, c, d, tol;
  std::optional<double> t_lo, t_hi;
  std::optional<std::size_t> grid_size, quad_nodes;
  std::optional<int> max_iter;
  std::optional<std::uint64_t> paths, seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out_dir;
  std::vector<double> pi0;

  std::string policy_kind = "solved";
  double interval = 2.0;
  double threshold = 0.9;
  std::string axis = "d";
  std::vector<double> values;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "config file (flat key=value or resolved JSON)");
  cmd->add_option("--alpha", opt.alpha, "post-disorder drift");
  cmd->add_option("--lambda", opt.lambda, "disorder rate");
  cmd->add_option("--c", opt.c, "delay cost rate");
  cmd->add_option("--d", opt.d, "cost per observation");
  cmd->add_option("--pi0", opt.pi0, "initial belief(s); list used by simulate")
      ->delimiter(',');
  cmd->add_option("--grid-size", opt.grid_size, "belief grid points");
  cmd->add_option("--quad-nodes", opt.quad_nodes, "Gauss-Hermite nodes");
  cmd->add_option("--t-lo", opt.t_lo, "lower end of the waiting-time search");
  cmd->add_option("--t-hi", opt.t_hi, "upper end of the waiting-time search (0 = auto)");
  cmd->add_option("--tol", opt.tol, "value-iteration sup-norm tolerance");
  cmd->add_option("--max-iter", opt.max_iter, "max value-iteration steps");
  cmd->add_option("--paths", opt.paths, "Monte Carlo paths");
  cmd->add_option("--seed", opt.seed, "master RNG seed");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  cmd->add_option("--out", opt.out_dir, "output directory");
}

disorder::RunConfig build_config(const CliOptions& opt) {
  disorder::RunConfig cfg;
  if (!opt.config_path.empty()) cfg = disorder::load_config_file(opt.config_path);
  if (opt.alpha) cfg.model.alpha = *opt.alpha;
  if (opt.lambda) cfg.model.lambda = *opt.lambda;
  if (opt.c) cfg.model.c = *opt.c;
  if (opt.d) cfg.model.d = *opt.d;
  if (!opt.pi0.empty()) {
    cfg.model.pi0 = opt.pi0.front();
    cfg.simulate.pi0_list = opt.pi0;
  }
  if (opt.grid_size) cfg.grid_size = *opt.grid_size;
  if (opt.quad_nodes) cfg.quadrature_nodes = *opt.quad_nodes;
  if (opt.t_lo) cfg.t_search.t_lo = *opt.t_lo;
  if (opt.t_hi) cfg.t_search.t_hi = *opt.t_hi;
  if (opt.tol) cfg.solver.tol = *opt.tol;
  if (opt.max_iter) cfg.solver.max_iter = *opt.max_iter;
  if (opt.paths) cfg.simulate.n_paths = *opt.paths;
  if (opt.seed) cfg.simulate.seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.out_dir) cfg.output_dir = *opt.out_dir;
  cfg.validate();
  return cfg;
}

void write_resolved_config(const disorder::RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/config.resolved.json");
  if (!out) throw std::runtime_error("cannot write config.resolved.json");
  out << disorder::resolved_config_json(cfg);
}

disorder::SolverOptions solver_options(const disorder::RunConfig& cfg) {
  disorder::SolverOptions opts;
  opts.tol = cfg.solver.tol;
  opts.max_iter = cfg.solver.max_iter;
  opts.n_threads = cfg.threads;
  return opts;
}

struct Solved {
  disorder::QuadratureRule rule;
  disorder::SolveResult result;
};

Solved run_solver(const disorder::RunConfig& cfg) {
  Solved solved;
  solved.rule = disorder::gauss_hermite(cfg.quadrature_nodes);
  solved.result = disorder::value_iteration(cfg.model, cfg.grid_size,
                                            solved.rule, cfg.t_search,
                                            solver_options(cfg));
  return solved;
}

void write_residuals(const disorder::RunConfig& cfg,
                     const disorder::SolveResult& result) {
  disorder::CsvWriter csv(cfg.output_dir + "/residuals.csv",
                          {"n", "sup_norm_delta"});
  for (std::size_t n = 0; n < result.residuals.size(); ++n) {
    csv.row(n + 1, result.residuals[n]);
  }
}

void write_values(const disorder::RunConfig& cfg,
                  const disorder::SolveResult& result) {
  disorder::CsvWriter csv(cfg.output_dir + "/values.csv", {"pi", "n", "value"});
  const std::size_t keep =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.solver.n_iterates_to_keep),
                            result.iterates.size());
  for (std::size_t n = 0; n < keep; ++n) {
    const auto& f = result.iterates[n];
    for (std::size_t i = 0; i < f.size(); ++i) {
      csv.row(f.grid[i], n, f.values[i]);
    }
  }
}

int cmd_solve(const CliOptions& opt) {
  const disorder::RunConfig cfg = build_config(opt);
  write_resolved_config(cfg);
  const Solved solved = run_solver(cfg);
  write_residuals(cfg, solved.result);
  write_values(cfg, solved.result);
  std::cout << "solve: " << solved.result.iterations
            << " iterations, residual " << solved.result.residual
            << (solved.result.converged ? "" : " (NOT CONVERGED)") << "\n";
  if (solved.result.any_boundary_clipped) {
    std::cout << "note: some inner minimizers were clipped at t_hi\n";
  }
  return solved.result.converged ? 0 : kExitNoConvergence;
}

int cmd_policy(const CliOptions& opt) {
  const disorder::RunConfig cfg = build_config(opt);
  write_resolved_config(cfg);
  const Solved solved = run_solver(cfg);
  write_residuals(cfg, solved.result);
  if (!solved.result.converged) return kExitNoConvergence;

  const std::size_t n_max =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.solver.n_iterates_to_keep) - 1,
                            solved.result.t_maps.size() - 1);
  {
    disorder::CsvWriter csv(cfg.output_dir + "/policy.csv",
                            {"pi", "n", "t_star", "terminal_wait"});
    const auto& grid = solved.result.fixed_point.grid;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const std::vector<double> t_star =
          disorder::t_star_for_iterate(solved.result, cfg.model, n);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row(grid[i], n, t_star[i],
                disorder::stop_now_optimizer(cfg.model, grid[i]));
      }
    }
  }
  {
    const std::vector<double> thresholds =
        disorder::pi_star_sequence(solved.result, cfg.model, n_max);
    disorder::CsvWriter csv(cfg.output_dir + "/pi_star.csv", {"n", "pi_star"});
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      csv.row(k + 1, thresholds[k]);
    }
  }
  return 0;
}

std::string policy_label(const CliOptions& opt) {
  if (opt.policy_kind == "periodic") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "periodic(%g;%g)", opt.interval,
                  opt.threshold);
    return buf;
  }
  return opt.policy_kind;
}

int cmd_simulate(const CliOptions& opt) {
  const disorder::RunConfig cfg = build_config(opt);
  if (opt.policy_kind != "solved" && opt.policy_kind != "periodic" &&
      opt.policy_kind != "never") {
    throw std::invalid_argument("--policy must be solved, periodic, or never");
  }
  write_resolved_config(cfg);
  const Solved solved = run_solver(cfg);
  if (!solved.result.converged) return kExitNoConvergence;

  disorder::Policy policy;
  if (opt.policy_kind == "solved") {
    policy = disorder::extract_policy(solved.result, cfg.model);
  } else if (opt.policy_kind == "periodic") {
    policy = disorder::periodic_policy(cfg.model, opt.interval, opt.threshold,
                                       cfg.grid_size);
  } else {
    policy = disorder::never_observe_policy(cfg.model, cfg.grid_size);
  }

  disorder::CsvWriter csv(
      cfg.output_dir + "/risk.csv",
      {"pi0", "policy", "n_paths", "total_risk", "se_total", "p_false_alarm",
       "mean_delay", "mean_obs", "risk_posterior_form", "se_posterior_form",
       "value_function_at_pi0"});
  for (double pi0 : cfg.simulate.pi0_list) {
    disorder::ModelParams params = cfg.model;
    params.pi0 = pi0;
    const disorder::RiskEstimate estimate = disorder::estimate_risk(
        params, policy, cfg.simulate.n_paths, cfg.simulate.seed, cfg.threads);
    csv.row(pi0, policy_label(opt), estimate.n_paths, estimate.total_risk,
            estimate.se_total, estimate.false_alarm.mean, estimate.delay.mean,
            estimate.observations.mean, estimate.posterior_form.mean,
            estimate.posterior_form.se, solved.result.fixed_point(pi0));
  }
  return 0;
}

int cmd_sweep(const CliOptions& opt) {
  disorder::RunConfig cfg = build_config(opt);
  if (opt.axis != "c" && opt.axis != "d" && opt.axis != "alpha") {
    throw std::invalid_argument("--axis must be c, d, or alpha");
  }
  if (opt.values.empty()) {
    throw std::invalid_argument("--values must list at least one value");
  }
  write_resolved_config(cfg);

  disorder::CsvWriter csv(cfg.output_dir + "/sweep.csv",
                          {"axis", "value", "pi", "V"});
  std::vector<std::vector<double>> solutions;
  std::vector<double> solved_values;
  bool any_failed = false;
  for (double value : opt.values) {
    disorder::RunConfig point = cfg;
    if (opt.axis == "c") point.model.c = value;
    else if (opt.axis == "d") point.model.d = value;
    else point.model.alpha = value;
    try {
      point.validate();
      const Solved solved = run_solver(point);
      if (!solved.result.converged) {
        throw std::runtime_error("no convergence within max_iter");
      }
      const auto& v = solved.result.fixed_point;
      for (std::size_t i = 0; i < v.size(); ++i) {
        csv.row(opt.axis, value, v.grid[i], v.values[i]);
      }
      solutions.push_back(v.values);
      solved_values.push_back(value);
    } catch (const std::exception& e) {
      any_failed = true;
      std::cerr << "sweep: " << opt.axis << " = " << value
                << " failed: " << e.what() << "\n";
    }
  }

  if (opt.axis != "alpha") {
    for (std::size_t k = 1; k < solutions.size(); ++k) {
      const bool increasing_axis = solved_values[k] > solved_values[k - 1];
      double min_delta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < solutions[k].size(); ++i) {
        const double delta = increasing_axis
                                 ? solutions[k][i] - solutions[k - 1][i]
                                 : solutions[k - 1][i] - solutions[k][i];
        min_delta = std::min(min_delta, delta);
      }
      std::cout << "sweep monotonicity (" << opt.axis << " "
                << solved_values[k - 1] << " -> " << solved_values[k]
                << "): min pointwise increase " << min_delta
                << (min_delta >= -1e-9 ? " (nondecreasing)" : " (VIOLATION)")
                << "\n";
    }
  }
  return any_failed ? kExitNoConvergence : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener disorder detection with costly observations"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* solve = app.add_subcommand("solve", "value iteration to the fixed point");
  add_common_options(solve, opt);

  CLI::App* policy = app.add_subcommand("policy", "per-iterate policy maps and thresholds");
  add_common_options(policy, opt);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo risk of a policy");
  add_common_options(simulate, opt);
  simulate->add_option("--policy", opt.policy_kind, "solved | periodic | never");
  simulate->add_option("--interval", opt.interval, "periodic observation interval");
  simulate->add_option("--threshold", opt.threshold, "periodic stop threshold");

  CLI::App* sweep = app.add_subcommand("sweep", "solve across a parameter axis");
  add_common_options(sweep, opt);
  sweep->add_option("--axis", opt.axis, "c | d | alpha");
  sweep->add_option("--values", opt.values, "axis values")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (policy->parsed()) return cmd_policy(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    return cmd_sweep(opt);
  } catch (const disorder::SimulationGuardError& e) {
    std::cerr << "simulation guard: " << e.what() << "\n";
    return kExitSimulationGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
