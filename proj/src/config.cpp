#include "disorder/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace disorder {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" +
                                value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::int64_t parsed = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": '" +
                                value + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  const std::int64_t parsed = parse_int(key, value);
  if (parsed < 0) throw std::invalid_argument("config: " + key + " must be >= 0");
  return static_cast<std::uint64_t>(parsed);
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(parse_double(key, item.substr(first, last - first + 1)));
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (grid_size < 3) throw std::invalid_argument("grid_size must be >= 3");
  if (quadrature_nodes < 1)
    throw std::invalid_argument("quadrature_nodes must be >= 1");
  t_search.validate(model);
  if (!(solver.tol > 0.0)) throw std::invalid_argument("solver.tol must be > 0");
  if (solver.max_iter < 1)
    throw std::invalid_argument("solver.max_iter must be >= 1");
  if (solver.n_iterates_to_keep < 1)
    throw std::invalid_argument("solver.n_iterates_to_keep must be >= 1");
  if (simulate.n_paths < 1)
    throw std::invalid_argument("simulate.n_paths must be >= 1");
  if (simulate.pi0_list.empty())
    throw std::invalid_argument("simulate.pi0 list must be nonempty");
  for (double pi0 : simulate.pi0_list) detail::require_belief(pi0);
  if (output_dir.empty()) throw std::invalid_argument("output dir must be set");
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "model.alpha") config.model.alpha = parse_double(key, value);
  else if (key == "model.lambda") config.model.lambda = parse_double(key, value);
  else if (key == "model.c") config.model.c = parse_double(key, value);
  else if (key == "model.d") config.model.d = parse_double(key, value);
  else if (key == "model.pi0") config.model.pi0 = parse_double(key, value);
  else if (key == "grid_size") config.grid_size = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "quadrature_nodes") config.quadrature_nodes = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "t_search.t_lo") config.t_search.t_lo = parse_double(key, value);
  else if (key == "t_search.t_hi") config.t_search.t_hi = parse_double(key, value);
  else if (key == "t_search.coarse_points") config.t_search.coarse_points = static_cast<int>(parse_int(key, value));
  else if (key == "t_search.refine_rel_tol") config.t_search.refine_rel_tol = parse_double(key, value);
  else if (key == "solver.tol") config.solver.tol = parse_double(key, value);
  else if (key == "solver.max_iter") config.solver.max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "solver.n_iterates_to_keep") config.solver.n_iterates_to_keep = static_cast<int>(parse_int(key, value));
  else if (key == "simulate.n_paths") config.simulate.n_paths = parse_uint(key, value);
  else if (key == "simulate.seed") config.simulate.seed = parse_uint(key, value);
  else if (key == "simulate.pi0") config.simulate.pi0_list = parse_double_list(key, value);
  else if (key == "output.dir") config.output_dir = value;
  else if (key == "threads") config.threads = static_cast<unsigned>(parse_uint(key, value));
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig parse_flat_config(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not a key = value entry");
    }
    apply_config_entry(config, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
  }
  return config;
}

std::string resolved_config_json(const RunConfig& config) {
  nlohmann::json j;
  j["model"] = {{"alpha", config.model.alpha},
                {"lambda", config.model.lambda},
                {"c", config.model.c},
                {"d", config.model.d},
                {"pi0", config.model.pi0}};
  j["grid_size"] = config.grid_size;
  j["quadrature_nodes"] = config.quadrature_nodes;
  j["t_search"] = {{"t_lo", config.t_search.t_lo},
                   {"t_hi", config.t_search.t_hi},
                   {"coarse_points", config.t_search.coarse_points},
                   {"refine_rel_tol", config.t_search.refine_rel_tol}};
  j["solver"] = {{"tol", config.solver.tol},
                 {"max_iter", config.solver.max_iter},
                 {"n_iterates_to_keep", config.solver.n_iterates_to_keep}};
  j["simulate"] = {{"n_paths", config.simulate.n_paths},
                   {"seed", config.simulate.seed},
                   {"pi0", config.simulate.pi0_list}};
  j["output"] = {{"dir", config.output_dir}};
  j["threads"] = config.threads;
  return j.dump(2) + "\n";
}

RunConfig config_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunConfig config;
  const auto& model = j.at("model");
  config.model.alpha = model.at("alpha").get<double>();
  config.model.lambda = model.at("lambda").get<double>();
  config.model.c = model.at("c").get<double>();
  config.model.d = model.at("d").get<double>();
  config.model.pi0 = model.at("pi0").get<double>();
  config.grid_size = j.at("grid_size").get<std::size_t>();
  config.quadrature_nodes = j.at("quadrature_nodes").get<std::size_t>();
  const auto& ts = j.at("t_search");
  config.t_search.t_lo = ts.at("t_lo").get<double>();
  config.t_search.t_hi = ts.at("t_hi").get<double>();
  config.t_search.coarse_points = ts.at("coarse_points").get<int>();
  config.t_search.refine_rel_tol = ts.at("refine_rel_tol").get<double>();
  const auto& solver = j.at("solver");
  config.solver.tol = solver.at("tol").get<double>();
  config.solver.max_iter = solver.at("max_iter").get<int>();
  config.solver.n_iterates_to_keep = solver.at("n_iterates_to_keep").get<int>();
  const auto& sim = j.at("simulate");
  config.simulate.n_paths = sim.at("n_paths").get<std::uint64_t>();
  config.simulate.seed = sim.at("seed").get<std::uint64_t>();
  config.simulate.pi0_list = sim.at("pi0").get<std::vector<double>>();
  config.output_dir = j.at("output").at("dir").get<std::string>();
  config.threads = j.at("threads").get<unsigned>();
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool looks_json =
      (first != std::string::npos && text[first] == '{') ||
      (path.size() > 5 && path.substr(path.size() - 5) == ".json");
  return looks_json ? config_from_json_text(text) : parse_flat_config(text);
}

}  // namespace disorder
