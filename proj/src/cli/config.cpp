#include "qsz/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace qsz::cli {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

void check_grid(const std::vector<double>& grid, double lo, double hi, std::string_view name) {
  if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > lo && grid[i] < hi)) {
      throw ConfigError(std::string(name) + " value " + std::to_string(grid[i]) + " outside its valid domain");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError(std::string(name) + " grid must be strictly increasing");
  }
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) throw ConfigError("grid must look like A:B:STEPS[:log]");
  const bool log_scale = parts.size() == 4;
  if (log_scale && parts[3] != "log" && parts[3] != "linear") throw ConfigError("grid scale must be 'log' or 'linear'");
  const double a = parse_number(parts[0], "grid start");
  const double b = parse_number(parts[1], "grid end");
  const double steps_d = parse_number(parts[2], "grid steps");
  if (steps_d < 1 || steps_d != std::floor(steps_d) || steps_d > 1e7) throw ConfigError("grid steps must be a positive integer");
  const auto steps = static_cast<int>(steps_d);
  const bool geometric = log_scale && parts[3] == "log";
  if (geometric && !(a > 0.0 && b > 0.0)) throw ConfigError("log grid needs positive bounds");
  if (steps == 1) return {a};
  if (!(b > a)) throw ConfigError("grid end must exceed grid start");

  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) / (steps - 1);
    grid[i] = geometric ? std::exp(std::log(a) + s * (std::log(b) - std::log(a))) : a + s * (b - a);
  }
  grid.front() = a;
  grid.back() = b;
  return grid;
}

EngineModel RunConfig::model() const {
  EngineModel m;
  m.particle_count = particles;
  m.statistics = statistics;
  m.temperature = temperatures.empty() ? 1.0 : temperatures.front();
  m.truncation = truncation;
  m.solver = solver;
  return m;
}

void RunConfig::validate() const {
  if (particles < 1) throw ConfigError("--n must be >= 1");
  if (workers < 1) throw ConfigError("--workers must be >= 1");
  check_grid(temperatures, 0.0, INFINITY, "temperature");
  check_grid(insertions, 0.0, 1.0, "insertion point");
  if (!positions.empty()) check_grid(positions, 0.0, 1.0, "position");
  if (outcome < 0 || outcome > particles) throw ConfigError("--m must lie in [0, N]");
  if (insertion_grid_points < 3) throw ConfigError("--l-points must be >= 3");
  if (!(truncation.eps > 0.0 && truncation.eps < 1.0)) throw ConfigError("--eps must lie in (0, 1)");
  if (solver.scan_points < 3) throw ConfigError("--scan-points must be >= 3");
  if (!(solver.root_tolerance > 0.0)) throw ConfigError("--root-tol must be positive");
}

}  // namespace qsz::cli
