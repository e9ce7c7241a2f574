#pragma once

// Slow reference implementations. Nothing here calls the production
// recursion; only the single-particle spectrum is shared.

#include <vector>

#include "qsz/log_value.hpp"
#include "qsz/model.hpp"

namespace qsz::oracle {

inline constexpr int kMaxParticles = 5;
inline constexpr int kMaxLevels = 14;

/// Occupation number per level for one configuration.
using Occupancy = std::vector<int>;

/// Every way to put `particles` into `levels` levels: at most one per level
/// for fermions, unbounded otherwise.
std::vector<Occupancy> enumerate_occupancies(int particles, int levels, Statistics stats);

/// Z_m(y) as the literal sum over joint left/right configurations,
///   sum_sigma w_sigma exp(-beta sum_n (E_n(y) m_n + E_n(L - y) q_n)),
/// with n_max levels on each side. w = 1 for bosons and fermions and
/// 1 / (prod m_n! prod q_n!) for distinguishable particles, which matches the
/// z^n / n! normalisation of the production code.
///
/// Throws DomainError beyond N = 5 or n_max = 14.
LogValue enumerate_partition(int N, int m, double beta, double y, Statistics stats, int n_max,
                             const BoxGeometry& geom = {});

/// ln Z(n | y) for one segment as a configuration sum over all states whose
/// excitation energy is below window / beta; no level cap.
double segment_log_partition(int n, double beta, double y, Statistics stats, const BoxGeometry& geom = {},
                             double window = 40.0);

/// ln f_m*(x) built from segment_log_partition.
double log_fraction(const EngineModel& model, int m, double x);

/// Argmax of f_m* on a uniform grid over the model's scan interval, refined
/// by golden-section search to 1e-9 L.
double grid_maximize_fraction(const EngineModel& model, int m, int grid_size = 256);

}  // namespace qsz::oracle
