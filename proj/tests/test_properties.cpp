// Randomised invariants with a fixed seed.

#include <cmath>
#include <random>

#include "doctest.h"
#include "qsz/engine.hpp"

using namespace qsz;

namespace {

struct Draw {
  EngineModel model;
  double y;
};

Draw draw(std::mt19937& rng) {
  std::uniform_int_distribution<int> stats(0, 2);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> logt(std::log(0.3), std::log(50.0));
  std::uniform_real_distribution<double> pos(0.05, 0.95);
  Draw d;
  d.model.statistics = static_cast<Statistics>(stats(rng));
  d.model.particle_count = count(rng);
  d.model.temperature = std::exp(logt(rng));
  d.y = pos(rng);
  return d;
}

}  // namespace

TEST_CASE("random models: partition invariants") {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const auto [model, y] = draw(rng);
    CAPTURE(model.temperature);
    CAPTURE(y);
    const int N = model.particle_count;
    const auto a = model.split(y);
    const auto b = model.split(model.length() - y);
    double sum = 0.0;
    for (int m = 0; m <= N; ++m) {
      sum += a.fractions[m];
      const double da = a.per_outcome[m].log_magnitude();
      const double db = b.per_outcome[N - m].log_magnitude();
      // L - (L - y) differs from y by one rounding
      CHECK(std::fabs(da - db) <= 1e-9 * std::max(1.0, std::fabs(da)));
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("random models: force routes agree") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto [model, y] = draw(rng);
    const auto prof = force_profile(model, y);
    const auto split = model.split(y);
    for (int m = 0; m <= model.particle_count; ++m) {
      const double a = model.beta() * prof.residual(m);
      const double b = log_fraction_derivative(split, m);
      CHECK(std::fabs(a - b) <= 1e-10 * std::max({1.0, std::fabs(a), std::fabs(b)}));
    }
  }
}

TEST_CASE("random models: optimal work is positive and dominant") {
  std::mt19937 rng(99);
  for (int i = 0; i < 40; ++i) {
    const auto [model, l] = draw(rng);
    const auto points = solve_stopping_points(model);
    const auto opt = evaluate_protocol(model, l, points, Protocol::Optimal);
    const auto bal = evaluate_protocol(model, l, points, Protocol::Balance);
    CHECK(opt.total_work.thermal >= -1e-12);
    CHECK(opt.total_work.thermal >= bal.total_work.thermal - 1e-12);
    for (int m = 0; m <= model.particle_count; ++m) {
      CHECK(opt.fractions[m] <= std::exp(log_fraction_at_stop(model, m, opt.stops[m])) + 1e-12);
    }
  }
}
