#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsz/model.hpp"
#include "qsz/sweep.hpp"

namespace qsz::cli {

/// Bad flags, grids or config files. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

/// "A:B:STEPS" gives STEPS evenly spaced points from A to B inclusive;
/// "A:B:STEPS:log" spaces them geometrically.
std::vector<double> parse_grid(std::string_view spec);

struct RunConfig {
  std::string command;
  Statistics statistics = Statistics::Boson;
  int particles = 3;
  std::vector<double> temperatures{1.0};
  bool temperature_grid = false;
  std::vector<double> insertions{0.5};
  bool insertion_grid = false;
  ProtocolSelection protocol = ProtocolSelection::Both;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty writes to stdout
  int workers = 1;

  int outcome = 1;                 // forces: which m to tabulate
  std::vector<double> positions;   // forces: x grid
  int insertion_grid_points = 401;  // optimize: l scan

  TruncationPolicy truncation{};
  SolverTolerances solver{};

  /// Model at the first temperature of the grid.
  EngineModel model() const;
  /// Throws ConfigError.
  void validate() const;
};

}  // namespace qsz::cli
