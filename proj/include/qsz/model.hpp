#pragma once

#include "qsz/partition.hpp"
#include "qsz/spectrum.hpp"

namespace qsz {

/// Root-finding settings shared by the balance and optimal solvers.
struct SolverTolerances {
  int scan_points = 1024;
  double scan_margin = 1e-4;     // scan covers (margin L, L - margin L)
  double root_tolerance = 1e-10;  // bisection stops below this * L
};

/// N particles in a box at dimensionless temperature t = k_B T / E0.
struct EngineModel {
  int particle_count = 1;
  Statistics statistics = Statistics::Boson;
  BoxGeometry geometry{};
  double temperature = 1.0;
  TruncationPolicy truncation{};
  SolverTolerances solver{};

  double thermal_energy() const { return temperature * geometry.energy_unit; }
  double beta() const { return 1.0 / thermal_energy(); }
  double length() const { return geometry.total_length; }
  PartitionOptions partition_options() const { return {geometry, truncation}; }

  SplitPartition split(double y) const {
    return split_partition(particle_count, beta(), y, statistics, partition_options());
  }

  /// Throws DomainError on N < 1, t <= 0 or a bad geometry.
  void validate() const;
};

}  // namespace qsz
