#include <cmath>

#include "doctest.h"
#include "qsz/errors.hpp"
#include "qsz/model.hpp"
#include "qsz/oracle.hpp"

using namespace qsz;

TEST_CASE("occupancy enumeration counts") {
  // multisets of 3 from 5 levels and subsets of 3 from 5 levels
  CHECK(oracle::enumerate_occupancies(3, 5, Statistics::Boson).size() == 35);
  CHECK(oracle::enumerate_occupancies(3, 5, Statistics::Fermion).size() == 10);
  CHECK(oracle::enumerate_occupancies(0, 5, Statistics::Fermion).size() == 1);
  for (const auto& occ : oracle::enumerate_occupancies(3, 5, Statistics::Fermion)) {
    int total = 0;
    for (int q : occ) {
      CHECK(q <= 1);
      total += q;
    }
    CHECK(total == 3);
  }
}

TEST_CASE("enumeration edge cases") {
  SUBCASE("empty left side leaves the right segment") {
    // ln Z(2 bosons | 0.7) at t = 1
    CHECK(oracle::enumerate_partition(2, 0, 1.0, 0.3, Statistics::Boson, 12).log_magnitude() ==
          doctest::Approx(-4.0794370955289425).epsilon(1e-13));
  }
  SUBCASE("two fermions in two levels") {
    const double y = 0.4;
    const double expected = -(level_energy(1, y) + level_energy(2, y));
    CHECK(oracle::enumerate_partition(2, 2, 1.0, y, Statistics::Fermion, 2).log_magnitude() ==
          doctest::Approx(expected).epsilon(1e-15));
  }
  CHECK_THROWS_AS(oracle::enumerate_partition(6, 1, 1.0, 0.5, Statistics::Boson, 4), DomainError);
  CHECK_THROWS_AS(oracle::enumerate_partition(3, 1, 1.0, 0.5, Statistics::Boson, 15), DomainError);
}

TEST_CASE("enumeration matches the recursion for 3 bosons at t = 1") {
  PartitionOptions opts;
  opts.truncation.fixed_levels = 12;
  const auto s = split_partition(3, 1.0, 0.5, Statistics::Boson, opts);
  for (int m = 0; m <= 3; ++m) {
    const auto z = oracle::enumerate_partition(3, m, 1.0, 0.5, Statistics::Boson, 12);
    CHECK(std::fabs(std::expm1(z.log_magnitude() - s.per_outcome[m].log_magnitude())) < 1e-10);
  }
}

TEST_CASE("windowed segment sum matches the production segment") {
  for (Statistics st : {Statistics::Boson, Statistics::Fermion, Statistics::Distinguishable}) {
    for (double t : {0.5, 5.0}) {
      for (int n = 0; n <= 3; ++n) {
        const double a = oracle::segment_log_partition(n, 1 / t, 0.6, st);
        const double b = canonical_partition(n, 1 / t, 0.6, st).log_magnitude();
        CHECK(std::fabs(a - b) < 1e-12 * std::max(1.0, std::fabs(b)));
      }
    }
  }
}

TEST_CASE("grid maximizer") {
  EngineModel model;
  model.particle_count = 2;
  model.statistics = Statistics::Fermion;
  CHECK(oracle::grid_maximize_fraction(model, 1) == doctest::Approx(0.5).epsilon(1e-8));

  model.particle_count = 3;
  model.statistics = Statistics::Boson;
  CHECK(std::fabs(oracle::grid_maximize_fraction(model, 1) - 0.490) <= 0.005);
  CHECK_THROWS_AS(oracle::grid_maximize_fraction(model, 1, 100), DomainError);
}
