#include "qsz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qsz/errors.hpp"

namespace qsz::oracle {
namespace {

void fill(int level, int remaining, bool exclusive, Occupancy& current, std::vector<Occupancy>& out) {
  const int levels = static_cast<int>(current.size());
  if (level == levels) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int cap = exclusive ? std::min(1, remaining) : remaining;
  for (int k = 0; k <= cap; ++k) {
    current[level] = k;
    fill(level + 1, remaining - k, exclusive, current, out);
  }
  current[level] = 0;
}

double log_multiplicity_weight(const Occupancy& occ, Statistics stats) {
  if (stats != Statistics::Distinguishable) return 0.0;
  double w = 0.0;
  for (int k : occ) w -= std::lgamma(k + 1.0);
  return w;
}

double configuration_energy(const Occupancy& occ, double y, const BoxGeometry& geom) {
  double e = 0.0;
  for (std::size_t n = 0; n < occ.size(); ++n) {
    if (occ[n] > 0) e += occ[n] * level_energy(static_cast<int>(n) + 1, y, geom);
  }
  return e;
}

double max_shifted_log_sum(const std::vector<double>& logs) {
  if (logs.empty()) return -INFINITY;
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - top);
  return top + std::log(acc);
}

}  // namespace

std::vector<Occupancy> enumerate_occupancies(int particles, int levels, Statistics stats) {
  if (particles < 0 || levels < 0) throw DomainError("enumerate_occupancies: negative size");
  if (stats == Statistics::ClassicalIdealGas) throw DomainError("enumerate_occupancies: no spectrum");
  std::vector<Occupancy> out;
  Occupancy current(levels, 0);
  fill(0, particles, stats == Statistics::Fermion, current, out);
  return out;
}

LogValue enumerate_partition(int N, int m, double beta, double y, Statistics stats, int n_max,
                             const BoxGeometry& geom) {
  if (N < 1 || N > kMaxParticles) throw DomainError("enumerate_partition: N outside [1, 5]");
  if (n_max < 1 || n_max > kMaxLevels) throw DomainError("enumerate_partition: n_max outside [1, 14]");
  if (m < 0 || m > N) throw DomainError("enumerate_partition: m outside [0, N]");
  const double L = geom.total_length;
  if (!(y > 0.0 && y < L)) throw DomainError("enumerate_partition: y outside (0, L)");

  const auto left = enumerate_occupancies(m, n_max, stats);
  const auto right = enumerate_occupancies(N - m, n_max, stats);
  std::vector<double> terms;
  terms.reserve(left.size() * right.size());
  for (const auto& a : left) {
    const double ea = configuration_energy(a, y, geom);
    const double wa = log_multiplicity_weight(a, stats);
    for (const auto& b : right) {
      const double energy = ea + configuration_energy(b, L - y, geom);
      terms.push_back(wa + log_multiplicity_weight(b, stats) - beta * energy);
    }
  }
  if (terms.empty()) return {};
  return LogValue::from_log(max_shifted_log_sum(terms));
}

double segment_log_partition(int n, double beta, double y, Statistics stats, const BoxGeometry& geom,
                             double window) {
  if (n < 0 || n > kMaxParticles) throw DomainError("segment_log_partition: n outside [0, 5]");
  if (stats == Statistics::ClassicalIdealGas) throw DomainError("segment_log_partition: no spectrum");
  if (n == 0) return 0.0;
  const bool exclusive = stats == Statistics::Fermion;

  // Levels are visited in nondecreasing (fermions: increasing) order, so a
  // configuration is a sorted list of level indices.
  const auto E = [&](int j) { return level_energy(j, y, geom); };
  double ground = 0.0;
  for (int i = 0; i < n; ++i) ground += E(exclusive ? i + 1 : 1);
  const double cutoff = window / beta;

  std::vector<int> levels(n);
  double sum = 0.0;
  std::function<void(int, int, double)> visit = [&](int slot, int lowest, double energy) {
    if (slot == n) {
      double w = std::exp(-beta * (energy - ground));
      if (stats == Statistics::Distinguishable) {
        int run = 1;
        for (int i = 1; i <= n; ++i) {
          if (i < n && levels[i] == levels[i - 1]) {
            ++run;
          } else {
            w /= std::tgamma(run + 1.0);
            run = 1;
          }
        }
      }
      sum += w;
      return;
    }
    for (int j = lowest;; ++j) {
      // cheapest completion from level j on
      double bound = energy;
      for (int r = 0; r < n - slot; ++r) bound += E(exclusive ? j + r : j);
      if (bound - ground > cutoff) break;
      levels[slot] = j;
      visit(slot + 1, exclusive ? j + 1 : j, energy + E(j));
    }
  };
  visit(0, 1, 0.0);
  return -beta * ground + std::log(sum);
}

double log_fraction(const EngineModel& model, int m, double x) {
  const int N = model.particle_count;
  const double L = model.length();
  std::vector<double> left(N + 1), right(N + 1), logs(N + 1);
  for (int n = 0; n <= N; ++n) {
    left[n] = segment_log_partition(n, model.beta(), x, model.statistics, model.geometry);
    right[n] = segment_log_partition(n, model.beta(), L - x, model.statistics, model.geometry);
  }
  for (int p = 0; p <= N; ++p) logs[p] = left[p] + right[N - p];
  const double top = *std::max_element(logs.begin(), logs.end());
  if (logs[m] < top) return logs[m] - max_shifted_log_sum(logs);
  double rest = 0.0;
  for (int p = 0; p <= N; ++p) {
    if (p != m) rest += std::exp(logs[p] - logs[m]);
  }
  return -std::log1p(rest);
}

double grid_maximize_fraction(const EngineModel& model, int m, int grid_size) {
  if (grid_size < 256) throw DomainError("grid_maximize_fraction: grid_size must be >= 256");
  const double L = model.length();
  const double lo = model.solver.scan_margin * L;
  const double hi = L - lo;
  const auto f = [&](double x) { return log_fraction(model, m, x); };

  int best = 0;
  double best_value = -INFINITY;
  std::vector<double> xs(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    xs[i] = lo + (hi - lo) * i / (grid_size - 1);
    const double v = f(xs[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, grid_size - 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-9 * L) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qsz::oracle
