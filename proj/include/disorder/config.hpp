// Run configuration for the CLI: a flat key=value text format (dotted key
// paths), a JSON "resolved" form persisted next to every output, and
// validation of all numeric fields against the module preconditions.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disorder/jump_operator.hpp"
#include "disorder/model.hpp"

namespace disorder {

struct SolverConfig {
  double tol = 1e-5;
  int max_iter = 500;
  int n_iterates_to_keep = 11;
};

struct SimulateConfig {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 12345;
  std::vector<double> pi0_list = {0.2, 0.5, 0.8};
};

struct RunConfig {
  ModelParams model;  // defaults: alpha=1, lambda=0.1, c=0.01, d=0.001
  std::size_t grid_size = 201;
  std::size_t quadrature_nodes = 64;
  TimeSearchConfig t_search;
  SolverConfig solver;
  SimulateConfig simulate;
  std::string output_dir = "out";
  unsigned threads = 1;

  void validate() const;  // throws std::invalid_argument
};

/// Applies one dotted-path entry, e.g. ("model.lambda", "0.1"). Unknown
/// keys and malformed values throw std::invalid_argument.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Parses flat key=value text ('#' comments, blank lines ignored).
RunConfig parse_flat_config(const std::string& text);

/// Loads either the flat text format or a resolved JSON file (detected by a
/// leading '{' or a .json extension).
RunConfig load_config_file(const std::string& path);

/// Stable JSON serialization of the fully resolved configuration;
/// reloadable through load_config_file.
std::string resolved_config_json(const RunConfig& config);

RunConfig config_from_json_text(const std::string& text);

}  // namespace disorder
