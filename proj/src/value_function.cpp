#include "disorder/value_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disorder {

double ValueFunction::operator()(double pi) const {
  if (grid.size() < 2 || grid.size() != values.size()) {
    throw std::logic_error("ValueFunction: malformed grid");
  }
  if (pi <= grid.front()) return values.front();
  if (pi >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), pi);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (pi - grid[lo]) / (grid[hi] - grid[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

std::vector<double> uniform_belief_grid(std::size_t n) {
  if (n < 3) throw std::invalid_argument("belief grid needs >= 3 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

ValueFunction sample_on_grid(std::vector<double> grid,
                             const std::function<double(double)>& fn) {
  ValueFunction f;
  f.values.reserve(grid.size());
  for (double pi : grid) f.values.push_back(fn(pi));
  f.grid = std::move(grid);
  return f;
}

double max_concavity_violation(const std::vector<double>& grid,
                               const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double w = (grid[i] - grid[i - 1]) / (grid[i + 1] - grid[i - 1]);
    const double chord = values[i - 1] + w * (values[i + 1] - values[i - 1]);
    worst = std::max(worst, chord - values[i]);
  }
  return worst;
}

FunctionClassReport check_function_class(const ValueFunction& f) {
  FunctionClassReport report;
  for (std::size_t i = 0; i < f.size(); ++i) {
    report.max_lower_violation =
        std::max(report.max_lower_violation, -f.values[i]);
    report.max_upper_violation =
        std::max(report.max_upper_violation, f.values[i] - (1.0 - f.grid[i]));
  }
  report.max_concavity_violation = max_concavity_violation(f.grid, f.values);
  report.end_value = std::abs(f.values.back());
  return report;
}

double sup_norm_diff(const ValueFunction& a, const ValueFunction& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sup_norm_diff: mismatched grids");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  return worst;
}

}  // namespace disorder
