#include "qsz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsz/errors.hpp"

namespace qsz {
namespace {

void check_level_args(int n, double y, const BoxGeometry& geom) {
  if (n < 1) throw DomainError("level index must be >= 1, got " + std::to_string(n));
  if (!(y > 0.0) || y > geom.total_length) {
    throw DomainError("segment length " + std::to_string(y) + " outside (0, L]");
  }
}

}  // namespace

void BoxGeometry::validate() const {
  if (!(total_length > 0.0) || !std::isfinite(total_length)) {
    throw DomainError("box length must be positive");
  }
  if (!(energy_unit > 0.0) || !std::isfinite(energy_unit)) {
    throw DomainError("energy unit must be positive");
  }
}

double level_energy(int n, double y, const BoxGeometry& geom) {
  check_level_args(n, y, geom);
  const double ratio = geom.total_length / y;
  return static_cast<double>(n) * n * geom.energy_unit * ratio * ratio;
}

double level_energy_derivative(int n, double y, const BoxGeometry& geom) {
  check_level_args(n, y, geom);
  const double L = geom.total_length;
  return -2.0 * static_cast<double>(n) * n * geom.energy_unit * L * L / (y * y * y);
}

int truncation_level(double beta, double y, const TruncationPolicy& policy,
                     const BoxGeometry& geom, int reference_level) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(policy.eps > 0.0 && policy.eps < 1.0)) throw DomainError("truncation eps must be in (0, 1)");
  check_level_args(std::max(reference_level, 1), y, geom);

  // beta E0 (L/y)^2 (n^2 - r^2) > ln(1/eps)  <=>  n^2 > r^2 + c
  const double ratio = geom.total_length / y;
  const double scale = beta * geom.energy_unit * ratio * ratio;
  const double c = -std::log(policy.eps) / scale;
  const double r2 = static_cast<double>(reference_level) * reference_level;
  const double bound = std::sqrt(r2 + c);

  const auto overflow = [&] {
    return TruncationError("truncation needs more than " + std::to_string(policy.ceiling) +
                           " levels; temperature too high for the level cap");
  };
  if (!(bound < static_cast<double>(policy.ceiling))) throw overflow();
  auto candidate = static_cast<long long>(std::ceil(bound));
  while (static_cast<double>(candidate) * candidate - r2 <= c) ++candidate;
  const long long n = std::max<long long>(policy.floor, candidate);
  if (n > policy.ceiling) throw overflow();
  return static_cast<int>(n);
}

}  // namespace qsz
