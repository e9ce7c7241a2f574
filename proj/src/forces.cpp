#include "qsz/forces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qsz/errors.hpp"

namespace qsz {
namespace {

struct LevelTable {
  std::vector<double> log_x;     // -beta E_j
  std::vector<double> pressure;  // -dE_j/dy
};

LevelTable level_table(int levels, double beta, double y, const BoxGeometry& geom) {
  LevelTable t;
  t.log_x.reserve(levels);
  t.pressure.reserve(levels);
  for (int j = 1; j <= levels; ++j) {
    t.log_x.push_back(-beta * level_energy(j, y, geom));
    t.pressure.push_back(-level_energy_derivative(j, y, geom));
  }
  return t;
}

// occupations[n][j] for n = 0..max_particles over the given levels; also
// returns ln Z(n).
std::vector<std::vector<double>> occupations(int max_particles, Statistics stats, const LevelTable& t,
                                             std::vector<double>& log_z) {
  const int M = static_cast<int>(t.log_x.size());
  const int N = max_particles;
  std::vector<std::vector<double>> occ(N + 1, std::vector<double>(M, 0.0));
  log_z.assign(N + 1, kNegInf);
  log_z[0] = 0.0;

  switch (stats) {
    case Statistics::Distinguishable: {
      const double lz = log_sum_exp(t.log_x);
      for (int n = 1; n <= N; ++n) {
        log_z[n] = n * lz - std::lgamma(n + 1.0);
        for (int j = 0; j < M; ++j) occ[n][j] = n * std::exp(t.log_x[j] - lz);
      }
      break;
    }
    case Statistics::Boson: {
      for (int j = 0; j < M; ++j) {
        for (int k = 1; k <= N; ++k) log_z[k] = log_add_exp(log_z[k], t.log_x[j] + log_z[k - 1]);
      }
      // P(n_j >= k) = x_j^k Z(n - k) / Z(n)
      for (int n = 1; n <= N; ++n) {
        for (int j = 0; j < M; ++j) {
          double acc = 0.0;
          for (int k = 1; k <= n; ++k) acc += std::exp(k * t.log_x[j] + log_z[n - k] - log_z[n]);
          occ[n][j] = acc;
        }
      }
      break;
    }
    case Statistics::Fermion: {
      // prefix[j] holds ln e_k over levels [0, j); suffix[j] over [j, M).
      std::vector<std::vector<double>> prefix(M + 1, std::vector<double>(N + 1, kNegInf));
      std::vector<std::vector<double>> suffix(M + 1, std::vector<double>(N + 1, kNegInf));
      prefix[0][0] = 0.0;
      suffix[M][0] = 0.0;
      for (int j = 0; j < M; ++j) {
        prefix[j + 1] = prefix[j];
        for (int k = 1; k <= N; ++k) {
          prefix[j + 1][k] = log_add_exp(prefix[j][k], t.log_x[j] + prefix[j][k - 1]);
        }
      }
      for (int j = M - 1; j >= 0; --j) {
        suffix[j] = suffix[j + 1];
        for (int k = 1; k <= N; ++k) {
          suffix[j][k] = log_add_exp(suffix[j + 1][k], t.log_x[j] + suffix[j + 1][k - 1]);
        }
      }
      log_z = prefix[M];
      // <n_j> = x_j Z_{n-1}(levels without j) / Z_n
      std::vector<double> without(N);
      for (int j = 0; j < M; ++j) {
        for (int k = 0; k < N; ++k) {
          double acc = kNegInf;
          for (int a = 0; a <= k; ++a) acc = log_add_exp(acc, prefix[j][a] + suffix[j + 1][k - a]);
          without[k] = acc;
        }
        for (int n = 1; n <= N; ++n) occ[n][j] = std::exp(t.log_x[j] + without[n - 1] - log_z[n]);
      }
      break;
    }
    case Statistics::ClassicalIdealGas:
      throw DomainError("the classical gas has no level occupations");
  }
  return occ;
}

void check_wall(const EngineModel& model, double x) {
  if (!(x > 0.0 && x < model.length())) {
    throw DomainError("wall position " + std::to_string(x) + " outside (0, L)");
  }
}

}  // namespace

SegmentForces segment_forces(int max_particles, double beta, double y, Statistics stats,
                             const PartitionOptions& opts) {
  if (max_particles < 0) throw DomainError("particle number must be >= 0");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  SegmentForces out;
  out.pressure.assign(max_particles + 1, 0.0);

  if (stats == Statistics::ClassicalIdealGas) {
    const double lz = classical_log_z1(beta, y, opts.geometry);
    out.log_z.assign(max_particles + 1, 0.0);
    for (int n = 1; n <= max_particles; ++n) {
      out.log_z[n] = n * lz - std::lgamma(n + 1.0);
      out.pressure[n] = n / (beta * y);
    }
    return out;
  }

  const int levels = segment_level_count(max_particles, beta, y, stats, opts);
  const LevelTable table = level_table(levels, beta, y, opts.geometry);
  const auto occ = occupations(max_particles, stats, table, out.log_z);
  for (int n = 1; n <= max_particles; ++n) {
    double acc = 0.0;
    for (int j = 0; j < levels; ++j) acc += occ[n][j] * table.pressure[j];
    out.pressure[n] = acc;
  }
  return out;
}

std::vector<double> mean_occupations(int n, double beta, double y, Statistics stats,
                                     const PartitionOptions& opts) {
  if (n < 0) throw DomainError("particle number must be >= 0");
  const int levels = segment_level_count(n, beta, y, stats, opts);
  std::vector<double> log_z;
  auto occ = occupations(n, stats, level_table(levels, beta, y, opts.geometry), log_z);
  return occ[n];
}

double ForceProfile::residual(int m) const {
  double acc = 0.0;
  for (int p = 0; p <= particle_count(); ++p) {
    if (p != m) acc += fractions[p] * (outcome_forces[m] - outcome_forces[p]);
  }
  return acc;
}

double ForceProfile::scaled_residual(int m) const {
  double top = kNegInf;
  for (int p = 0; p <= particle_count(); ++p) {
    if (p != m) top = std::max(top, log_weights[p]);
  }
  double acc = 0.0;
  for (int p = 0; p <= particle_count(); ++p) {
    if (p != m) acc += std::exp(log_weights[p] - top) * (outcome_forces[m] - outcome_forces[p]);
  }
  return acc;
}

ForceProfile force_profile(const EngineModel& model, double x) {
  check_wall(model, x);
  const int N = model.particle_count;
  const double L = model.length();
  const auto opts = model.partition_options();
  const SegmentForces left = segment_forces(N, model.beta(), x, model.statistics, opts);
  const SegmentForces right = segment_forces(N, model.beta(), L - x, model.statistics, opts);

  ForceProfile prof;
  prof.position = x;
  prof.outcome_forces.resize(N + 1);
  prof.log_weights.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    prof.outcome_forces[m] = left.pressure[m] - right.pressure[N - m];
    prof.log_weights[m] = left.log_z[m] + right.log_z[N - m];
  }
  prof.log_fractions.resize(N + 1);
  prof.fractions.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    prof.log_fractions[m] = log_share(prof.log_weights, m);
    prof.fractions[m] = std::exp(prof.log_fractions[m]);
  }
  if (model.statistics == Statistics::ClassicalIdealGas) {
    prof.backward_force = classical_average_force(N, x, L, model.thermal_energy());
  } else {
    double acc = 0.0;
    for (int p = 0; p <= N; ++p) acc += prof.fractions[p] * prof.outcome_forces[p];
    prof.backward_force = acc;
  }
  return prof;
}

ForceSample force_sample(const EngineModel& model, int m, double x) {
  if (m < 0 || m > model.particle_count) throw DomainError("outcome index out of range");
  const ForceProfile prof = force_profile(model, x);
  ForceSample s;
  s.position = x;
  s.forward_force = prof.outcome_forces[m];
  s.backward_force = prof.backward_force;
  s.residual = s.forward_force - s.backward_force;
  return s;
}

double forward_force(const EngineModel& model, int m, double x) {
  return force_sample(model, m, x).forward_force;
}

double backward_force(const EngineModel& model, double x) { return force_profile(model, x).backward_force; }

double classical_outcome_weight(int N, int p, double y, double L) {
  if (N < 0 || p < 0 || p > N) throw DomainError("classical_outcome_weight: bad (N, p)");
  if (!(y > 0.0 && y < L)) throw DomainError("classical_outcome_weight: y outside (0, L)");
  const double q = y / L;
  const double log_binom = std::lgamma(N + 1.0) - std::lgamma(p + 1.0) - std::lgamma(N - p + 1.0);
  return std::exp(log_binom + p * std::log(q) + (N - p) * std::log1p(-q));
}

double classical_outcome_force(int N, int p, double y, double L, double thermal_energy) {
  if (N < 0 || p < 0 || p > N) throw DomainError("classical_outcome_force: bad (N, p)");
  if (!(y > 0.0 && y < L)) throw DomainError("classical_outcome_force: y outside (0, L)");
  return thermal_energy * (p / y - (N - p) / (L - y));
}

double classical_average_force(int N, double y, double L, double thermal_energy) {
  if (N < 1) throw DomainError("classical_average_force: N must be >= 1");
  if (!(y > 0.0 && y < L)) throw DomainError("classical_average_force: y outside (0, L)");
  // sum_p P_N(p) p / y       = (N / L) sum_{p=1}^{N} P_{N-1}(p - 1)
  // sum_p P_N(p) (N - p)/(L-y) = (N / L) sum_{p=0}^{N-1} P_{N-1}(p)
  double left = 0.0;
  for (int p = 1; p <= N; ++p) left += classical_outcome_weight(N - 1, p - 1, y, L);
  double right = 0.0;
  for (int p = 0; p <= N - 1; ++p) right += classical_outcome_weight(N - 1, p, y, L);
  return thermal_energy * (N / L) * left - thermal_energy * (N / L) * right;
}

namespace {

using Kind = BracketRecord::Kind;

double residual_of(const ForceProfile& prof, int m, Kind kind) {
  return kind == Kind::Balance ? prof.outcome_forces[m] : prof.scaled_residual(m);
}

// ln Z_m for balance (free energy minimum), ln f_m* for the optimum.
double score_of(const ForceProfile& prof, int m, Kind kind) {
  return kind == Kind::Balance ? prof.log_weights[m] : prof.log_fractions[m];
}

struct Scan {
  std::vector<double> x;
  std::vector<ForceProfile> profiles;
};

Scan scan(const EngineModel& model) {
  const auto& tol = model.solver;
  if (tol.scan_points < 3) throw DomainError("scan needs at least 3 points");
  const double L = model.length();
  const double lo = tol.scan_margin * L;
  const double hi = L - lo;
  Scan s;
  s.x.resize(tol.scan_points);
  s.profiles.reserve(tol.scan_points);
  for (int i = 0; i < tol.scan_points; ++i) {
    s.x[i] = lo + (hi - lo) * i / (tol.scan_points - 1);
    s.profiles.push_back(force_profile(model, s.x[i]));
  }
  return s;
}

// Bisection with r(a) > 0 >= r(b). Returns the profile at the final midpoint.
ForceProfile bisect(const EngineModel& model, int m, Kind kind, double a, double b) {
  const double width = model.solver.root_tolerance * model.length();
  while (b - a > width) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (residual_of(force_profile(model, mid), m, kind) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return force_profile(model, 0.5 * (a + b));
}

BracketRecord locate(const EngineModel& model, int m, Kind kind, const Scan& s) {
  BracketRecord rec;
  rec.kind = kind;
  rec.outcome = m;
  const std::size_t K = s.x.size();
  std::vector<double> r(K);
  for (std::size_t i = 0; i < K; ++i) r[i] = residual_of(s.profiles[i], m, kind);

  double best_score = kNegInf;
  double best_x = 0.0;
  for (std::size_t i = 0; i + 1 < K; ++i) {
    if (r[i] > 0.0 && r[i + 1] <= 0.0) {
      const ForceProfile root = bisect(model, m, kind, s.x[i], s.x[i + 1]);
      rec.maxima.push_back(root.position);
      const double score = score_of(root, m, kind);
      if (score > best_score) {
        best_score = score;
        best_x = root.position;
      }
    } else if (r[i] < 0.0 && r[i + 1] >= 0.0) {
      rec.minima.push_back(0.5 * (s.x[i] + s.x[i + 1]));
    }
  }
  if (rec.maxima.empty()) {
    std::vector<std::pair<double, double>> grid(K);
    for (std::size_t i = 0; i < K; ++i) grid[i] = {s.x[i], r[i]};
    throw NoBracketError(std::string(kind == Kind::Balance ? "force balance" : "optimal point") +
                             ": no bracket found for outcome m = " + std::to_string(m),
                         std::move(grid));
  }
  for (std::size_t edge : {std::size_t{0}, K - 1}) {
    const double score = score_of(s.profiles[edge], m, kind);
    if (score > best_score) {
      best_score = score;
      best_x = s.x[edge];
      rec.chosen_at_scan_edge = true;
    }
  }
  rec.chosen = best_x;
  return rec;
}

void check_outcome(const EngineModel& model, int m) {
  if (m < 0 || m > model.particle_count) throw DomainError("outcome index out of range");
}

double endpoint_or_classical(const EngineModel& model, int m) {
  return model.length() * m / model.particle_count;
}

bool solved_symbolically(const EngineModel& model, int m) {
  return m == 0 || m == model.particle_count || model.statistics == Statistics::ClassicalIdealGas;
}

}  // namespace

double solve_balance(const EngineModel& model, int m) {
  model.validate();
  check_outcome(model, m);
  if (solved_symbolically(model, m)) return endpoint_or_classical(model, m);
  return locate(model, m, Kind::Balance, scan(model)).chosen;
}

double solve_optimal(const EngineModel& model, int m) {
  model.validate();
  check_outcome(model, m);
  if (solved_symbolically(model, m)) return endpoint_or_classical(model, m);
  return locate(model, m, Kind::Optimal, scan(model)).chosen;
}

StoppingPoints solve_stopping_points(const EngineModel& model) {
  model.validate();
  const int N = model.particle_count;
  StoppingPoints sp;
  sp.balance.resize(N + 1);
  sp.optimal.resize(N + 1);
  const bool need_scan = N > 1 && model.statistics != Statistics::ClassicalIdealGas;
  const Scan s = need_scan ? scan(model) : Scan{};
  for (int m = 0; m <= N; ++m) {
    if (solved_symbolically(model, m)) {
      sp.balance[m] = sp.optimal[m] = endpoint_or_classical(model, m);
      continue;
    }
    for (Kind kind : {Kind::Balance, Kind::Optimal}) {
      BracketRecord rec = locate(model, m, kind, s);
      (kind == Kind::Balance ? sp.balance : sp.optimal)[m] = rec.chosen;
      sp.diagnostics.push_back(std::move(rec));
    }
  }
  return sp;
}

}  // namespace qsz
