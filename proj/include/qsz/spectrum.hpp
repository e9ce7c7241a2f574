#pragma once

// Single-particle levels of an infinite square well segment.
//
// A segment of length y inside a box of length L has levels
//   E_n(y) = n^2 E0 (L / y)^2,
// where E0 is the ground-state energy of one particle in the full box.

namespace qsz {

struct BoxGeometry {
  double total_length = 1.0;  // L
  double energy_unit = 1.0;   // E0

  void validate() const;
};

/// How many levels of a segment enter the partition sums.
struct TruncationPolicy {
  /// Levels whose Boltzmann weight relative to the reference level falls
  /// below eps are dropped.
  double eps = 1e-14;
  int floor = 8;
  int ceiling = 10000;
  /// When > 0, every segment uses exactly this many levels and eps/floor are
  /// ignored. Used to compare against configuration enumeration.
  int fixed_levels = 0;
};

/// E_n(y). Valid for n >= 1 and 0 < y <= L.
double level_energy(int n, double y, const BoxGeometry& geom = {});

/// dE_n/dy = -2 n^2 E0 L^2 / y^3 for a segment whose length is y.
double level_energy_derivative(int n, double y, const BoxGeometry& geom = {});

/// Smallest n with exp(-beta (E_n(y) - E_r(y))) < eps, where r is the
/// reference level (1 unless the caller fills the lowest levels, as for
/// fermions), clamped from below by policy.floor.
///
/// Throws TruncationError when the answer exceeds policy.ceiling.
int truncation_level(double beta, double y, const TruncationPolicy& policy = {},
                     const BoxGeometry& geom = {}, int reference_level = 1);

}  // namespace qsz
