#include "qsz/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qsz/engine.hpp"
#include "qsz/oracle.hpp"

namespace qsz::cli {
namespace {

constexpr Statistics kQuantum[] = {Statistics::Boson, Statistics::Fermion, Statistics::Distinguishable};

CheckResult split_symmetry() {
  CheckResult r{"split-symmetry", 0.0, 1e-12};
  const auto rel = [](const LogValue& a, const LogValue& b) {
    return std::fabs(std::expm1(a.log_magnitude() - b.log_magnitude()));
  };
  for (Statistics st : kQuantum) {
    for (double t : {0.2, 1.0, 5.0, 20.0}) {
      for (int i = 1; i < 16; ++i) {
        const double y = i / 16.0;
        const auto a = split_partition(3, 1.0 / t, y, st);
        const auto b = split_partition(3, 1.0 / t, 1.0 - y, st);
        for (int m = 0; m <= 3; ++m) {
          r.worst = std::max(r.worst, rel(a.per_outcome[m], b.per_outcome[3 - m]));
        }
      }
    }
  }
  return r;
}

CheckResult normalisation() {
  CheckResult r{"normalisation", 0.0, 1e-12};
  for (Statistics st : kQuantum) {
    for (double t : {0.2, 1.0, 20.0}) {
      for (double y : {0.05, 0.3, 0.5, 0.8}) {
        const auto s = split_partition(4, 1.0 / t, y, st);
        double sum = 0.0;
        for (double f : s.fractions) sum += f;
        r.worst = std::max(r.worst, std::fabs(sum - 1.0));
      }
    }
  }
  return r;
}

CheckResult oracle_equivalence(Recursion recursion) {
  const bool power = recursion == Recursion::PowerSum;
  CheckResult r{power ? "oracle-equivalence-power-sum" : "oracle-equivalence", 0.0, power ? 1e-9 : 1e-10};
  PartitionOptions opts;
  opts.truncation.fixed_levels = 8;
  const auto temps = power ? std::vector<double>{5.0, 20.0} : std::vector<double>{0.5, 1.0, 5.0};
  for (Statistics st : kQuantum) {
    for (int N = 1; N <= 3; ++N) {
      for (double t : temps) {
        for (double y : power ? std::vector<double>{0.5} : std::vector<double>{0.3, 0.5, 0.7}) {
          for (int m = 0; m <= N; ++m) {
            const double beta = 1.0 / t;
            const double production = canonical_partition(m, beta, y, st, opts, recursion).log_magnitude() +
                                      canonical_partition(N - m, beta, 1.0 - y, st, opts, recursion).log_magnitude();
            const double reference = oracle::enumerate_partition(N, m, beta, y, st, 8).log_magnitude();
            r.worst = std::max(r.worst, std::fabs(production - reference));
          }
        }
      }
    }
  }
  return r;
}

CheckResult force_routes() {
  CheckResult r{"force-routes", 0.0, 1e-10};
  for (Statistics st : kQuantum) {
    for (double t : {0.5, 1.0, 5.0}) {
      EngineModel model;
      model.particle_count = 3;
      model.statistics = st;
      model.temperature = t;
      for (double x : {0.2, 0.45, 0.6}) {
        const ForceProfile prof = force_profile(model, x);
        const auto split = model.split(x);
        for (int m = 0; m <= 3; ++m) {
          const double a = model.beta() * prof.residual(m);
          const double b = log_fraction_derivative(split, m);
          r.worst = std::max(r.worst, std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}));
        }
      }
    }
  }
  return r;
}

CheckResult classical_baseline() {
  CheckResult r{"classical-average-force", 0.0, 0.0};
  for (int N = 1; N <= 6; ++N) {
    for (int i = 1; i < 20; ++i) r.worst = std::max(r.worst, std::fabs(classical_average_force(N, 0.05 * i, 1.0)));
  }
  return r;
}

CheckResult midpoint_stationarity() {
  CheckResult r{"midpoint-stationarity", 0.0, 1e-10};
  for (Statistics st : {Statistics::Boson, Statistics::Fermion}) {
    EngineModel model;
    model.particle_count = 3;
    model.statistics = st;
    model.temperature = 1.0;
    r.worst = std::max(r.worst, std::fabs(l_extremum_residual(model, 0.5)));
  }
  return r;
}

CheckResult positivity() {
  CheckResult r{"optimal-work-positivity", 0.0, 1e-12};
  EngineModel model;
  model.particle_count = 3;
  model.temperature = 1.0;
  const StoppingPoints sp = solve_stopping_points(model);
  for (double l : {0.3, 0.5, 0.7}) {
    const Work w = total_work(model, l, sp.optimal);
    r.worst = std::max(r.worst, -w.thermal);
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation() {
  return {split_symmetry(),
          normalisation(),
          oracle_equivalence(Recursion::LevelByLevel),
          oracle_equivalence(Recursion::PowerSum),
          force_routes(),
          classical_baseline(),
          midpoint_stationarity(),
          positivity()};
}

bool print_validation(std::ostream& os, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %-30s worst=%.3e tol=%.1e", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                  r.worst, r.tolerance);
    os << line << '\n';
    all = all && r.passed();
  }
  os << (all ? "all checks passed" : "validation FAILED") << '\n';
  return all;
}

}  // namespace qsz::cli
