#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qsz/log_value.hpp"
#include "qsz/spectrum.hpp"

namespace qsz {

enum class Statistics { Boson, Fermion, Distinguishable, ClassicalIdealGas };

std::string_view to_string(Statistics stats);
/// Accepts "boson", "fermion", "distinguishable", "classical".
std::optional<Statistics> parse_statistics(std::string_view name);

/// The classical ideal gas has no spectrum; its segment partition function is
/// the Boltzmann limit z(y) = (y / L) sqrt(pi / (4 beta E0)).
inline bool has_spectrum(Statistics stats) { return stats != Statistics::ClassicalIdealGas; }

/// ln z(y) for the classical gas.
double classical_log_z1(double beta, double y, const BoxGeometry& geom = {});

struct PartitionOptions {
  BoxGeometry geometry{};
  TruncationPolicy truncation{};
};

/// Algorithm for Z(n | y).
enum class Recursion {
  /// Adds one level at a time to the elementary (fermion) or complete
  /// (boson) symmetric polynomials of the Boltzmann factors. Every term is
  /// positive, so it is stable at any temperature.
  LevelByLevel,
  /// Z_n = (1/n) sum_k s^{k+1} z1(k beta) Z_{n-k}. Alternating for fermions
  /// and loses digits at low temperature; throws PrecisionError when the
  /// cancellation leaves nothing.
  PowerSum,
};

/// z1(k beta, y) = sum_n exp(-k beta E_n(y)), truncated with
/// truncation_level(k beta, y) and accumulated with a max shift.
LogValue single_particle_sum(int k, double beta, double y, const PartitionOptions& opts = {});

/// Number of levels used for a segment holding up to max_particles.
int segment_level_count(int max_particles, double beta, double y, Statistics stats,
                        const PartitionOptions& opts = {});

/// ln Z(n | y) and d ln Z(n | y) / dy for n = 0..max_particles.
struct SegmentPartition {
  double length = 0.0;
  int levels = 0;  // 0 for the classical gas
  std::vector<double> log_z;
  std::vector<double> log_z_slope;
};

SegmentPartition segment_partition(int max_particles, double beta, double y, Statistics stats,
                                   const PartitionOptions& opts = {});

/// Canonical partition function of n identical particles in a segment of
/// length y. Z(0 | y) = 1 exactly.
LogValue canonical_partition(int n, double beta, double y, Statistics stats,
                             const PartitionOptions& opts = {},
                             Recursion recursion = Recursion::LevelByLevel);

/// Z_m(y) = Z(m | y) Z(N - m | L - y) for every outcome m = 0..N.
struct SplitPartition {
  double wall_position = 0.0;
  std::vector<LogValue> per_outcome;
  LogValue total;
  std::vector<double> fractions;
  /// ln f_m, accurate even where f_m rounds to 0 or 1.
  std::vector<double> log_fractions;
  /// d ln Z_m / dy.
  std::vector<double> log_slopes;

  int particle_count() const { return static_cast<int>(per_outcome.size()) - 1; }
};

/// Defined on the open interval 0 < y < L.
SplitPartition split_partition(int N, double beta, double y, Statistics stats,
                               const PartitionOptions& opts = {});

/// d ln f_m / dy, propagated analytically through the level recursion.
double log_fraction_derivative(int N, double beta, double y, Statistics stats, int m,
                               const PartitionOptions& opts = {});
double log_fraction_derivative(const SplitPartition& split, int m);

/// ln(e^{v_m} / sum_p e^{v_p}); uses log1p when v_m dominates.
double log_share(const std::vector<double>& logs, int m);

}  // namespace qsz
