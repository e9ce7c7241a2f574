#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qsz/cli/config.hpp"
#include "qsz/cli/table.hpp"

namespace qsz::cli {

enum ExitCode : int { kSuccess = 0, kComputationFailed = 1, kConfigError = 2 };

/// F_m(x), <F_p(x)>, f_m*(x) and W_m(l, x) over the x grid; the footer holds
/// x_m^0 and x_m^op.
Table forces_table(const RunConfig& config);

/// Temperature sweep when the config holds a t grid, wall sweep for an l grid.
/// `failed_rows` receives the number of rows with an error.
Table sweep_table(const RunConfig& config, std::size_t* failed_rows = nullptr);

/// Both protocols at (t, l) plus the best insertion point.
Table optimize_table(const RunConfig& config);

/// Parses flags (and --config files), runs one subcommand and writes its
/// output. args excludes the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsz::cli
