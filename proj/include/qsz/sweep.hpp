#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsz/engine.hpp"

namespace qsz {

enum class ProtocolSelection { Balance, Optimal, Both };

struct ProtocolOutcome {
  Work total_work;
  std::vector<double> per_outcome_log_work;
};

/// One grid point of a sweep. A failed solve leaves the optional fields
/// empty and fills `error`.
struct SweepRow {
  double temperature = 0.0;
  double insertion_point = 0.0;
  std::vector<double> fractions;
  std::vector<double> balance_points;
  std::vector<double> optimal_points;
  std::optional<ProtocolOutcome> balance;
  std::optional<ProtocolOutcome> optimal;
  std::optional<double> extremum_residual;
  std::string error;

  bool ok() const { return error.empty(); }
};

/// One row per temperature in t_grid, wall inserted at l. The template's
/// temperature is ignored. Rows come back in grid order for any worker count.
std::vector<SweepRow> sweep_temperature(const EngineModel& model_template, std::span<const double> t_grid, double l,
                                        ProtocolSelection protocol, int workers = 1);

/// One row per insertion point. Stopping points do not depend on l and are
/// solved once.
std::vector<SweepRow> sweep_wall(const EngineModel& model, std::span<const double> l_grid,
                                 ProtocolSelection protocol, int workers = 1);

}  // namespace qsz
