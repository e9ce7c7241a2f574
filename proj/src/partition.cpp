#include "qsz/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsz/errors.hpp"

namespace qsz {
namespace {

// Building with -DQSZ_INJECT_FERMION_SIGN_ERROR turns fermions into bosons in
// both recursions. `qsz validate` must then report an oracle mismatch.
#ifdef QSZ_INJECT_FERMION_SIGN_ERROR
constexpr bool kFermionSignError = true;
#else
constexpr bool kFermionSignError = false;
#endif

void check_inputs(int n, double beta, double y, const PartitionOptions& opts) {
  if (n < 0) throw DomainError("particle number must be >= 0");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  opts.geometry.validate();
  if (!(y > 0.0) || y > opts.geometry.total_length) {
    throw DomainError("segment length " + std::to_string(y) + " outside (0, L]");
  }
}

// Merges two positive contributions (log value, log slope) into one.
inline void accumulate(double& log_acc, double& slope_acc, double log_term, double slope_term) {
  if (log_term == kNegInf) return;
  if (log_acc == kNegInf) {
    log_acc = log_term;
    slope_acc = slope_term;
    return;
  }
  const double top = std::max(log_acc, log_term);
  const double wa = std::exp(log_acc - top);
  const double wb = std::exp(log_term - top);
  const double sum = wa + wb;
  log_acc = top + std::log(sum);
  slope_acc = (wa * slope_acc + wb * slope_term) / sum;
}

}  // namespace

double classical_log_z1(double beta, double y, const BoxGeometry& geom) {
  return std::log(y / geom.total_length) +
         0.5 * std::log(std::numbers::pi / (4.0 * beta * geom.energy_unit));
}

std::string_view to_string(Statistics stats) {
  switch (stats) {
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
    case Statistics::Distinguishable: return "distinguishable";
    case Statistics::ClassicalIdealGas: return "classical";
  }
  return "unknown";
}

std::optional<Statistics> parse_statistics(std::string_view name) {
  if (name == "boson") return Statistics::Boson;
  if (name == "fermion") return Statistics::Fermion;
  if (name == "distinguishable") return Statistics::Distinguishable;
  if (name == "classical") return Statistics::ClassicalIdealGas;
  return std::nullopt;
}

LogValue single_particle_sum(int k, double beta, double y, const PartitionOptions& opts) {
  if (k < 1) throw DomainError("single_particle_sum: k must be >= 1");
  check_inputs(0, beta, y, opts);
  const double kbeta = k * beta;
  const int levels = opts.truncation.fixed_levels > 0
                         ? opts.truncation.fixed_levels
                         : truncation_level(kbeta, y, opts.truncation, opts.geometry);
  // The ground term is the largest, so it is the shift.
  const double shift = -kbeta * level_energy(1, y, opts.geometry);
  double acc = 0.0;
  for (int n = levels; n >= 1; --n) {
    acc += std::exp(-kbeta * level_energy(n, y, opts.geometry) - shift);
  }
  return LogValue::from_log(shift + std::log(acc));
}

int segment_level_count(int max_particles, double beta, double y, Statistics stats,
                        const PartitionOptions& opts) {
  if (!has_spectrum(stats)) return 0;
  if (opts.truncation.fixed_levels > 0) {
    if (stats == Statistics::Fermion && opts.truncation.fixed_levels < max_particles) {
      throw DomainError("fixed level count below the fermion number");
    }
    return opts.truncation.fixed_levels;
  }
  // Fermions fill the lowest levels, so weights are measured from the top
  // occupied one.
  const int reference = stats == Statistics::Fermion ? std::max(max_particles, 1) : 1;
  return truncation_level(beta, y, opts.truncation, opts.geometry, reference);
}

SegmentPartition segment_partition(int max_particles, double beta, double y, Statistics stats,
                                   const PartitionOptions& opts) {
  check_inputs(max_particles, beta, y, opts);
  const auto& geom = opts.geometry;
  SegmentPartition seg;
  seg.length = y;
  seg.log_z.assign(max_particles + 1, kNegInf);
  seg.log_z_slope.assign(max_particles + 1, 0.0);
  seg.log_z[0] = 0.0;

  if (stats == Statistics::ClassicalIdealGas) {
    const double lz = classical_log_z1(beta, y, geom);
    for (int n = 1; n <= max_particles; ++n) {
      seg.log_z[n] = n * lz - std::lgamma(n + 1.0);
      seg.log_z_slope[n] = n / y;
    }
    return seg;
  }

  seg.levels = segment_level_count(max_particles, beta, y, stats, opts);
  if (max_particles == 0) return seg;

  if (stats == Statistics::Distinguishable) {
    double lz = kNegInf;
    double slope = 0.0;
    for (int j = 1; j <= seg.levels; ++j) {
      accumulate(lz, slope, -beta * level_energy(j, y, geom),
                 -beta * level_energy_derivative(j, y, geom));
    }
    for (int n = 1; n <= max_particles; ++n) {
      seg.log_z[n] = n * lz - std::lgamma(n + 1.0);
      seg.log_z_slope[n] = n * slope;
    }
    return seg;
  }

  const bool descending = stats == Statistics::Fermion && !kFermionSignError;
  for (int j = 1; j <= seg.levels; ++j) {
    const double lx = -beta * level_energy(j, y, geom);
    const double dlx = -beta * level_energy_derivative(j, y, geom);
    if (descending) {
      // e_k <- e_k + x_j e_{k-1}, reading e_{k-1} before this level.
      for (int k = std::min(j, max_particles); k >= 1; --k) {
        accumulate(seg.log_z[k], seg.log_z_slope[k], lx + seg.log_z[k - 1], dlx + seg.log_z_slope[k - 1]);
      }
    } else {
      // h_k <- h_k + x_j h_{k-1}, with h_{k-1} already including this level.
      for (int k = 1; k <= max_particles; ++k) {
        accumulate(seg.log_z[k], seg.log_z_slope[k], lx + seg.log_z[k - 1], dlx + seg.log_z_slope[k - 1]);
      }
    }
  }
  return seg;
}

LogValue canonical_partition(int n, double beta, double y, Statistics stats,
                             const PartitionOptions& opts, Recursion recursion) {
  check_inputs(n, beta, y, opts);
  if (n == 0) return LogValue::one();
  if (recursion == Recursion::LevelByLevel || !has_spectrum(stats)) {
    return LogValue::from_log(segment_partition(n, beta, y, stats, opts).log_z[n]);
  }

  std::vector<LogValue> z1(n + 1);
  for (int k = 1; k <= n; ++k) z1[k] = single_particle_sum(k, beta, y, opts);
  if (stats == Statistics::Distinguishable) {
    return LogValue::from_log(n * z1[1].log_magnitude() - std::lgamma(n + 1.0));
  }

  const int s = stats == Statistics::Fermion && !kFermionSignError ? -1 : 1;
  std::vector<LogValue> z(n + 1);
  z[0] = LogValue::one();
  for (int i = 1; i <= n; ++i) {
    LogValue acc;
    double largest = kNegInf;
    for (int k = 1; k <= i; ++k) {
      const int sign = (s == -1 && k % 2 == 0) ? -1 : 1;
      const LogValue term = LogValue::from_log(0.0, sign) * z1[k] * z[i - k];
      largest = std::max(largest, term.log_magnitude());
      acc = acc + term;
    }
    // Relative rounding error beyond 1e-8 (or a sign flip) means the
    // alternating sum is no longer trustworthy.
    if (acc.sign() <= 0 || acc.log_magnitude() - largest < std::log(2.220446049250313e-16 / 1e-8)) {
      throw PrecisionError("unphysical cancellation in fermion recursion at n = " + std::to_string(i) +
                           ", beta = " + std::to_string(beta) + ", y = " + std::to_string(y));
    }
    z[i] = acc / LogValue::from_double(static_cast<double>(i));
  }
  return z[n];
}

double log_share(const std::vector<double>& logs, int m) {
  if (logs[m] < *std::max_element(logs.begin(), logs.end())) return logs[m] - log_sum_exp(logs);
  double rest = 0.0;
  for (std::size_t p = 0; p < logs.size(); ++p) {
    if (static_cast<int>(p) != m) rest += std::exp(logs[p] - logs[m]);
  }
  return -std::log1p(rest);
}

SplitPartition split_partition(int N, double beta, double y, Statistics stats,
                               const PartitionOptions& opts) {
  if (N < 1) throw DomainError("particle count must be >= 1");
  const double L = opts.geometry.total_length;
  if (!(y > 0.0 && y < L)) throw DomainError("wall position " + std::to_string(y) + " outside (0, L)");

  const SegmentPartition left = segment_partition(N, beta, y, stats, opts);
  const SegmentPartition right = segment_partition(N, beta, L - y, stats, opts);

  SplitPartition split;
  split.wall_position = y;
  std::vector<double> logs(N + 1);
  split.log_slopes.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    logs[m] = left.log_z[m] + right.log_z[N - m];
    // Moving the wall by dy changes the right segment by -dy.
    split.log_slopes[m] = left.log_z_slope[m] - right.log_z_slope[N - m];
    split.per_outcome.push_back(LogValue::from_log(logs[m]));
  }
  split.total = LogValue::from_log(log_sum_exp(logs));
  split.log_fractions.resize(N + 1);
  split.fractions.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    split.log_fractions[m] = log_share(logs, m);
    split.fractions[m] = std::exp(split.log_fractions[m]);
  }
  return split;
}

double log_fraction_derivative(const SplitPartition& split, int m) {
  const int N = split.particle_count();
  if (m < 0 || m > N) throw DomainError("outcome index out of range");
  // d ln Z_m - sum_p f_p d ln Z_p, written so the m term drops out exactly.
  double acc = 0.0;
  for (int p = 0; p <= N; ++p) {
    if (p != m) acc += split.fractions[p] * (split.log_slopes[m] - split.log_slopes[p]);
  }
  return acc;
}

double log_fraction_derivative(int N, double beta, double y, Statistics stats, int m,
                               const PartitionOptions& opts) {
  return log_fraction_derivative(split_partition(N, beta, y, stats, opts), m);
}

}  // namespace qsz
