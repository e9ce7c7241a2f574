#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsz {

/// Argument outside the physical domain (wall outside the box, n < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Level truncation needs more levels than the configured hard ceiling.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alternating-sign arithmetic lost all significant digits.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A residual never changed sign on the scan grid. Carries the grid so the
/// caller can print it.
class NoBracketError : public std::runtime_error {
 public:
  NoBracketError(const std::string& what, std::vector<std::pair<double, double>> grid)
      : std::runtime_error(what), grid_(std::move(grid)) {}

  const std::vector<std::pair<double, double>>& grid() const noexcept { return grid_; }

 private:
  std::vector<std::pair<double, double>> grid_;
};

}  // namespace qsz
