#pragma once

#include <string>
#include <vector>

#include "qsz/model.hpp"

namespace qsz {

/// Per-segment quantities for n = 0..max_particles particles: ln Z(n | y)
/// and the pressure on the segment wall,
///   P(n, y) = -sum_j <n_j> dE_j/dy,
/// from the mean level occupations <n_j> of the canonical ensemble.
struct SegmentForces {
  std::vector<double> log_z;
  std::vector<double> pressure;
};

SegmentForces segment_forces(int max_particles, double beta, double y, Statistics stats,
                             const PartitionOptions& opts = {});

/// Mean occupation <n_j> of levels j = 1..levels for exactly n particles.
std::vector<double> mean_occupations(int n, double beta, double y, Statistics stats,
                                     const PartitionOptions& opts = {});

/// Every outcome's force at one wall position.
struct ForceProfile {
  double position = 0.0;
  std::vector<double> outcome_forces;  // F_m, m = 0..N
  std::vector<double> log_weights;     // ln Z_m
  std::vector<double> log_fractions;   // ln f_m
  std::vector<double> fractions;       // f_m
  double backward_force = 0.0;         // <F_p>_p = sum_p f_p F_p

  int particle_count() const { return static_cast<int>(outcome_forces.size()) - 1; }
  /// F_m - <F_p>_p, summed as sum_{p != m} f_p (F_m - F_p).
  double residual(int m) const;
  /// Same sign as residual(m), rescaled so it cannot underflow to zero when
  /// outcome m dominates completely.
  double scaled_residual(int m) const;
};

ForceProfile force_profile(const EngineModel& model, double x);

struct ForceSample {
  double position = 0.0;
  double forward_force = 0.0;
  double backward_force = 0.0;
  double residual = 0.0;
};

ForceSample force_sample(const EngineModel& model, int m, double x);
double forward_force(const EngineModel& model, int m, double x);
double backward_force(const EngineModel& model, double x);

// Classical ideal-gas baseline (pressure proportional to density).

/// Binomial probability of p particles left of a wall at y.
double classical_outcome_weight(int N, int p, double y, double L);
/// k_B T (p / y - (N - p) / (L - y)).
double classical_outcome_force(int N, int p, double y, double L, double thermal_energy = 1.0);
/// sum_p P(p) F_p, which vanishes identically; evaluated termwise so that
/// the two pressure sums are the same floating-point sequence.
double classical_average_force(int N, double y, double L, double thermal_energy = 1.0);

// Stopping points.

struct BracketRecord {
  enum class Kind { Balance, Optimal };
  Kind kind = Kind::Balance;
  int outcome = 0;
  std::vector<double> maxima;   // roots where the residual falls through zero
  std::vector<double> minima;   // roots where it rises through zero
  double chosen = 0.0;
  bool chosen_at_scan_edge = false;
};

struct StoppingPoints {
  std::vector<double> balance;   // x_m^0
  std::vector<double> optimal;   // x_m^op
  std::vector<BracketRecord> diagnostics;
};

/// Root of F_m. Among several roots the maximizer of ln Z_m wins.
double solve_balance(const EngineModel& model, int m);
/// Root of F_m - <F_p> that maximizes f_m*. x_0 = 0 and x_N = L.
double solve_optimal(const EngineModel& model, int m);

/// Both solves for every outcome from one shared scan.
StoppingPoints solve_stopping_points(const EngineModel& model);

}  // namespace qsz
