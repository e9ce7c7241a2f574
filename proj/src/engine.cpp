#include "qsz/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qsz/errors.hpp"

namespace qsz {
namespace {

void check_insertion(const EngineModel& model, double l) {
  if (!(l > 0.0 && l < model.length())) {
    throw DomainError("insertion point " + std::to_string(l) + " outside (0, L)");
  }
}

void check_stops(const EngineModel& model, std::span<const double> stops) {
  if (static_cast<int>(stops.size()) != model.particle_count + 1) {
    throw DomainError("expected one stopping point per outcome");
  }
}

double work_at(const EngineModel& model, double l, std::span<const double> log_star) {
  const SplitPartition at_l = model.split(l);
  double acc = 0.0;
  for (int m = 0; m <= model.particle_count; ++m) {
    if (at_l.fractions[m] == 0.0) continue;
    acc += at_l.fractions[m] * (log_star[m] - at_l.log_fractions[m]);
  }
  return acc;
}

std::vector<double> log_stars(const EngineModel& model, std::span<const double> stops) {
  std::vector<double> out(stops.size());
  for (std::size_t m = 0; m < stops.size(); ++m) {
    out[m] = log_fraction_at_stop(model, static_cast<int>(m), stops[m]);
  }
  return out;
}

}  // namespace

double log_fraction_at_stop(const EngineModel& model, int m, double x) {
  const int N = model.particle_count;
  const double L = model.length();
  if (m < 0 || m > N) throw DomainError("outcome index out of range");
  if ((m == 0 && x == 0.0) || (m == N && x == L)) return 0.0;
  if (!(x > 0.0 && x < L)) {
    throw DomainError("stopping point " + std::to_string(x) + " for m = " + std::to_string(m) +
                      " outside (0, L)");
  }
  return model.split(x).log_fractions[m];
}

std::vector<double> outcome_log_works(const EngineModel& model, double l, std::span<const double> stops) {
  model.validate();
  check_insertion(model, l);
  check_stops(model, stops);
  const SplitPartition at_l = model.split(l);
  std::vector<double> w(stops.size());
  for (int m = 0; m <= model.particle_count; ++m) {
    w[m] = log_fraction_at_stop(model, m, stops[m]) - at_l.log_fractions[m];
  }
  return w;
}

Work total_work(const EngineModel& model, double l, std::span<const double> stops) {
  model.validate();
  check_insertion(model, l);
  check_stops(model, stops);
  const double thermal = work_at(model, l, log_stars(model, stops));
  return {thermal, thermal * model.temperature};
}

ProtocolSolution evaluate_protocol(const EngineModel& model, double l, const StoppingPoints& points,
                                   Protocol protocol) {
  model.validate();
  check_insertion(model, l);
  ProtocolSolution sol;
  sol.protocol = protocol;
  sol.insertion_point = l;
  sol.stopping_points = points;
  sol.stops = protocol == Protocol::Optimal ? points.optimal : points.balance;
  check_stops(model, sol.stops);

  const SplitPartition at_l = model.split(l);
  const std::vector<double> star = log_stars(model, sol.stops);
  sol.fractions = at_l.fractions;
  sol.per_outcome_log_work.resize(sol.stops.size());
  double acc = 0.0;
  for (int m = 0; m <= model.particle_count; ++m) {
    sol.per_outcome_log_work[m] = star[m] - at_l.log_fractions[m];
    if (at_l.fractions[m] != 0.0) acc += at_l.fractions[m] * sol.per_outcome_log_work[m];
  }
  sol.total_work = {acc, acc * model.temperature};
  if (protocol == Protocol::Optimal && acc < -1e-12) {
    throw std::logic_error("optimal protocol produced negative work " + std::to_string(acc) +
                           " k_BT; a maximum of f_m* was missed");
  }
  return sol;
}

ProtocolSolution optimal_protocol(const EngineModel& model, double l) {
  check_insertion(model, l);
  return evaluate_protocol(model, l, solve_stopping_points(model), Protocol::Optimal);
}

ProtocolSolution balance_protocol(const EngineModel& model, double l) {
  check_insertion(model, l);
  return evaluate_protocol(model, l, solve_stopping_points(model), Protocol::Balance);
}

double l_extremum_residual(const EngineModel& model, double l, std::span<const double> optimal_stops) {
  const std::vector<double> w = outcome_log_works(model, l, optimal_stops);
  const ForceProfile prof = force_profile(model, l);
  double wf = 0.0;
  double mean_w = 0.0;
  double mean_f = 0.0;
  for (int m = 0; m <= model.particle_count; ++m) {
    const double f = prof.fractions[m];
    wf += f * w[m] * prof.outcome_forces[m];
    mean_w += f * w[m];
    mean_f += f * prof.outcome_forces[m];
  }
  return wf - mean_w * mean_f;
}

double l_extremum_residual(const EngineModel& model, double l) {
  check_insertion(model, l);
  return l_extremum_residual(model, l, solve_stopping_points(model).optimal);
}

std::vector<InsertionPeak> insertion_work_maxima(const EngineModel& model, std::span<const double> optimal_stops,
                                                 int grid_points) {
  model.validate();
  check_stops(model, optimal_stops);
  if (grid_points < 3) throw DomainError("insertion grid needs at least 3 points");
  const double L = model.length();
  const std::vector<double> star = log_stars(model, optimal_stops);
  const auto work = [&](double l) { return work_at(model, l, star); };

  std::vector<double> l(grid_points);
  std::vector<double> w(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    l[i] = L * (i + 1) / (grid_points + 1);
    w[i] = work(l[i]);
  }

  std::vector<InsertionPeak> peaks;
  for (int i = 1; i + 1 < grid_points; ++i) {
    if (!(w[i] > w[i - 1] && w[i] >= w[i + 1])) continue;
    // Golden-section refinement on [l_{i-1}, l_{i+1}].
    constexpr double kInvPhi = 0.6180339887498949;
    double a = l[i - 1];
    double b = l[i + 1];
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double wc = work(c);
    double wd = work(d);
    while (b - a > 1e-9 * L) {
      if (wc >= wd) {
        b = d;
        d = c;
        wd = wc;
        c = b - kInvPhi * (b - a);
        wc = work(c);
      } else {
        a = c;
        c = d;
        wc = wd;
        d = a + kInvPhi * (b - a);
        wd = work(d);
      }
    }
    double best_l = 0.5 * (a + b);
    double best_w = work(best_l);
    if (w[i] > best_w) {
      best_l = l[i];
      best_w = w[i];
    }
    peaks.push_back({best_l, {best_w, best_w * model.temperature}});
  }
  return peaks;
}

InsertionPeak optimal_insertion(const EngineModel& model, int grid_points) {
  const StoppingPoints sp = solve_stopping_points(model);
  const auto peaks = insertion_work_maxima(model, sp.optimal, grid_points);
  if (peaks.empty()) throw NoBracketError("work has no interior maximum over the insertion point", {});
  return *std::max_element(peaks.begin(), peaks.end(), [](const InsertionPeak& a, const InsertionPeak& b) {
    return a.work.thermal < b.work.thermal;
  });
}

}  // namespace qsz
