#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsz::cli {

struct CheckResult {
  std::string name;
  double worst = 0.0;      // largest deviation seen
  double tolerance = 0.0;
  bool passed() const { return worst <= tolerance; }
};

/// Fast invariant suite: mirror symmetry, normalisation, small-N oracle
/// equivalence of both recursions, the two force routes, the classical
/// baseline, l = L/2 stationarity and optimal-work positivity.
std::vector<CheckResult> run_validation();

/// One "PASS|FAIL name worst=... tol=..." line per check. Returns true when
/// every check passed.
bool print_validation(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace qsz::cli
