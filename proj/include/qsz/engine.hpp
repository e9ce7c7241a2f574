#pragma once

#include <span>
#include <vector>

#include "qsz/forces.hpp"
#include "qsz/model.hpp"

namespace qsz {

/// Work in units of k_B T and of E0.
struct Work {
  double thermal = 0.0;
  double energy = 0.0;
};

enum class Protocol { Balance, Optimal };

/// ln f_m*(x). The endpoint outcomes accept x = 0 (m = 0) and x = L (m = N),
/// where f* = 1; every other stop must lie in (0, L).
double log_fraction_at_stop(const EngineModel& model, int m, double x);

/// W_m(l, x_m) = -ln[f_m(l) / f_m*(x_m)] for each outcome.
std::vector<double> outcome_log_works(const EngineModel& model, double l, std::span<const double> stops);

/// W = -k_B T sum_m f_m(l) ln[f_m(l) / f_m*(x_m)].
Work total_work(const EngineModel& model, double l, std::span<const double> stops);

struct ProtocolSolution {
  Protocol protocol = Protocol::Optimal;
  double insertion_point = 0.0;
  StoppingPoints stopping_points;
  std::vector<double> stops;                 // the x_m actually used
  std::vector<double> fractions;             // f_m(l)
  std::vector<double> per_outcome_log_work;  // W_m, dimensionless
  Work total_work;
};

/// Work for already solved stopping points.
ProtocolSolution evaluate_protocol(const EngineModel& model, double l, const StoppingPoints& points,
                                   Protocol protocol);

/// Stops at x_m^op. Throws std::logic_error if the total work comes out below
/// -1e-12 k_B T, which would mean the solver missed the maximum of f_m*.
ProtocolSolution optimal_protocol(const EngineModel& model, double l);
ProtocolSolution balance_protocol(const EngineModel& model, double l);

/// <W_m F_m(l)>_m - <W_p>_p <F_q(l)>_q with weights f_m(l) and W_m taken at
/// x_m^op. Vanishes where dW/dl = 0.
double l_extremum_residual(const EngineModel& model, double l);
double l_extremum_residual(const EngineModel& model, double l, std::span<const double> optimal_stops);

struct InsertionPeak {
  double position = 0.0;
  Work work;
};

/// Local maxima of W(l) under the optimal protocol: grid scan over
/// grid_points interior positions, each refined by golden-section search.
std::vector<InsertionPeak> insertion_work_maxima(const EngineModel& model, std::span<const double> optimal_stops,
                                                 int grid_points = 401);
/// The global maximum among insertion_work_maxima.
InsertionPeak optimal_insertion(const EngineModel& model, int grid_points = 401);

}  // namespace qsz
