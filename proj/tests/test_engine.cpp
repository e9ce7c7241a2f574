#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsz/engine.hpp"
#include "qsz/sweep.hpp"

using namespace qsz;

namespace {

EngineModel make(int N, Statistics st, double t) {
  EngineModel model;
  model.particle_count = N;
  model.statistics = st;
  model.temperature = t;
  return model;
}

}  // namespace

TEST_CASE("stopping at the insertion point extracts nothing") {
  const auto model = make(3, Statistics::Boson, 1.0);
  const std::vector<double> stops(4, 0.37);
  const Work w = total_work(model, 0.37, stops);
  CHECK(w.thermal == 0.0);
  CHECK(w.energy == 0.0);
}

TEST_CASE("work units") {
  const auto model = make(3, Statistics::Fermion, 2.5);
  const auto sol = optimal_protocol(model, 0.5);
  CHECK(sol.total_work.energy == doctest::Approx(2.5 * sol.total_work.thermal).epsilon(1e-15));
  double sum = 0.0;
  for (int m = 0; m <= 3; ++m) sum += sol.fractions[m] * sol.per_outcome_log_work[m];
  CHECK(sol.total_work.thermal == doctest::Approx(sum).epsilon(1e-14));
}

TEST_CASE("balance work sign structure for 3 bosons") {
  CHECK(balance_protocol(make(3, Statistics::Boson, 0.5), 0.5).total_work.thermal < 0);
  CHECK(balance_protocol(make(3, Statistics::Boson, 20.0), 0.5).total_work.thermal > 0);
}

TEST_CASE("optimal protocol beats force balance") {
  const auto model = make(3, Statistics::Boson, 1.0);
  const auto opt = optimal_protocol(model, 0.5);
  const auto bal = balance_protocol(model, 0.5);
  CHECK(opt.total_work.thermal > 0);
  CHECK(opt.total_work.thermal > bal.total_work.thermal);
  CHECK(bal.per_outcome_log_work[1] < 0);
  CHECK(opt.per_outcome_log_work[1] > 0);
  for (int m = 0; m <= 3; ++m) CHECK(opt.per_outcome_log_work[m] >= -1e-12);
}

TEST_CASE("single particle reaches ln 2 at high temperature") {
  const auto sol = optimal_protocol(make(1, Statistics::Boson, 200.0), 0.5);
  CHECK(std::fabs(sol.total_work.thermal / std::numbers::ln2 - 1.0) < 0.01);
}

TEST_CASE("two particles") {
  for (Statistics st : {Statistics::Boson, Statistics::Fermion, Statistics::Distinguishable}) {
    for (double t : {0.3, 1.0, 10.0}) {
      const auto sol = optimal_protocol(make(2, st, t), 0.5);
      CHECK(sol.stops[1] == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(sol.total_work.thermal >= 0);
    }
  }
}

TEST_CASE("optimal stops do not depend on l") {
  const auto model = make(3, Statistics::Fermion, 1.0);
  const auto a = optimal_protocol(model, 0.3);
  const auto b = optimal_protocol(model, 0.7);
  CHECK(a.stops == b.stops);
}

TEST_CASE("endpoint stops") {
  const auto model = make(3, Statistics::Boson, 1.0);
  CHECK(log_fraction_at_stop(model, 0, 0.0) == 0.0);
  CHECK(log_fraction_at_stop(model, 3, 1.0) == 0.0);
  CHECK_THROWS(log_fraction_at_stop(model, 1, 0.0));
}

TEST_CASE("l extremum residual") {
  for (Statistics st : {Statistics::Boson, Statistics::Fermion}) {
    const auto model = make(3, st, 1.0);
    CHECK(std::fabs(l_extremum_residual(model, 0.5)) < 1e-10);
    const double a = l_extremum_residual(model, 0.3);
    const double b = l_extremum_residual(model, 0.7);
    CHECK(std::fabs(a + b) <= 1e-10 * std::max(1.0, std::fabs(a)));
  }
}

TEST_CASE("work landscape of two fermions") {
  SUBCASE("low temperature: two peaks, residual vanishes at each") {
    const auto model = make(2, Statistics::Fermion, 1.0);
    const auto stops = solve_stopping_points(model).optimal;
    const auto peaks = insertion_work_maxima(model, stops);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].position < 0.45);
    CHECK(peaks[1].position == doctest::Approx(1.0 - peaks[0].position).epsilon(1e-6));
    for (const auto& p : peaks) {
      CHECK(l_extremum_residual(model, p.position - 0.02, stops) * l_extremum_residual(model, p.position + 0.02, stops) <
            0);
    }
  }
  SUBCASE("high temperature: one peak at the middle") {
    const auto model = make(2, Statistics::Fermion, 20.0);
    const auto peaks = insertion_work_maxima(model, solve_stopping_points(model).optimal);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].position == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("sweeps") {
  const auto model = make(3, Statistics::Boson, 1.0);
  const std::vector<double> ts{0.5, 1.0, 2.0, 5.0};

  SUBCASE("rows follow the grid for any worker count") {
    const auto one = sweep_temperature(model, ts, 0.5, ProtocolSelection::Both, 1);
    const auto many = sweep_temperature(model, ts, 0.5, ProtocolSelection::Both, 8);
    REQUIRE(one.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(one[i].temperature == ts[i]);
      CHECK(one[i].optimal_points == many[i].optimal_points);
      CHECK(one[i].balance->total_work.thermal == many[i].balance->total_work.thermal);
    }
  }
  SUBCASE("protocol selection") {
    const auto rows = sweep_temperature(model, ts, 0.5, ProtocolSelection::Balance, 2);
    CHECK(rows[0].balance.has_value());
    CHECK_FALSE(rows[0].optimal.has_value());
  }
  SUBCASE("wall sweep reuses the stops") {
    const std::vector<double> ls{0.2, 0.5, 0.8};
    const auto rows = sweep_wall(model, ls, ProtocolSelection::Optimal, 3);
    CHECK(rows[0].optimal_points == rows[2].optimal_points);
    CHECK(rows[0].optimal->total_work.thermal ==
          doctest::Approx(rows[2].optimal->total_work.thermal).epsilon(1e-10));
  }
  SUBCASE("a failing row is recorded, not thrown") {
    auto fragile = model;
    fragile.truncation.ceiling = 50;
    const std::vector<double> grid{1.0, 1e6};
    const auto rows = sweep_temperature(fragile, grid, 0.5, ProtocolSelection::Both, 2);
    CHECK(rows[0].ok());
    CHECK_FALSE(rows[1].ok());
    CHECK_FALSE(rows[1].optimal.has_value());
  }
}
