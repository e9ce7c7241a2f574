#include "qsz/sweep.hpp"

#include <exception>

#include "qsz/parallel.hpp"

namespace qsz {
namespace {

bool wants(ProtocolSelection sel, Protocol p) {
  return sel == ProtocolSelection::Both || (sel == ProtocolSelection::Balance) == (p == Protocol::Balance);
}

SweepRow make_row(const EngineModel& model, double l, const StoppingPoints& points, ProtocolSelection sel) {
  SweepRow row;
  row.temperature = model.temperature;
  row.insertion_point = l;
  row.balance_points = points.balance;
  row.optimal_points = points.optimal;
  for (Protocol p : {Protocol::Balance, Protocol::Optimal}) {
    if (!wants(sel, p)) continue;
    const ProtocolSolution sol = evaluate_protocol(model, l, points, p);
    row.fractions = sol.fractions;
    (p == Protocol::Balance ? row.balance : row.optimal) = ProtocolOutcome{sol.total_work, sol.per_outcome_log_work};
  }
  row.extremum_residual = l_extremum_residual(model, l, points.optimal);
  return row;
}

SweepRow failed_row(double t, double l, const std::exception& e) {
  SweepRow row;
  row.temperature = t;
  row.insertion_point = l;
  row.error = e.what();
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_temperature(const EngineModel& model_template, std::span<const double> t_grid, double l,
                                        ProtocolSelection protocol, int workers) {
  std::vector<SweepRow> rows(t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t i) {
    EngineModel model = model_template;
    model.temperature = t_grid[i];
    try {
      rows[i] = make_row(model, l, solve_stopping_points(model), protocol);
    } catch (const std::exception& e) {
      rows[i] = failed_row(t_grid[i], l, e);
    }
  });
  return rows;
}

std::vector<SweepRow> sweep_wall(const EngineModel& model, std::span<const double> l_grid,
                                 ProtocolSelection protocol, int workers) {
  std::vector<SweepRow> rows(l_grid.size());
  StoppingPoints points;
  try {
    points = solve_stopping_points(model);
  } catch (const std::exception& e) {
    for (std::size_t i = 0; i < l_grid.size(); ++i) rows[i] = failed_row(model.temperature, l_grid[i], e);
    return rows;
  }
  parallel_for(l_grid.size(), workers, [&](std::size_t i) {
    try {
      rows[i] = make_row(model, l_grid[i], points, protocol);
    } catch (const std::exception& e) {
      rows[i] = failed_row(model.temperature, l_grid[i], e);
    }
  });
  return rows;
}

}  // namespace qsz
