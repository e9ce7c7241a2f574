#include "qsz/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "CLI11.hpp"
#include "qsz/cli/validate.hpp"
#include "qsz/errors.hpp"

namespace qsz::cli {
namespace {

constexpr const char* kColumnHelp = R"(
Output columns (sweep/optimize; m = 0..N, lengths in units of L, forces in E0/L):
  t, l                 temperature k_BT/E0 and insertion point
  f_m                  outcome probability f_m(l)
  x0_m, xop_m          force-balance and optimal stopping points
  W_<p>_kT, W_<p>_E0   total work of protocol p (balance|optimal) in k_BT and E0
  Wm_<p>_m             per-outcome work -ln[f_m(l)/f_m*(x_m)]
  l_residual           dW/dl extremum residual at l (zero where W is stationary)
  error                empty unless the row failed
Sweeps take either --t-grid (temperature sweep at --l) or --l-grid (wall sweep at --t).
Grids are A:B:STEPS with STEPS points, or A:B:STEPS:log.
)";

std::vector<std::string> indexed(const std::string& stem, int N) {
  std::vector<std::string> out;
  for (int m = 0; m <= N; ++m) out.push_back(stem + "_" + std::to_string(m));
  return out;
}

void append(std::vector<std::string>& a, const std::vector<std::string>& b) { a.insert(a.end(), b.begin(), b.end()); }

void append_values(std::vector<Cell>& row, const std::vector<double>& values, int N) {
  for (int m = 0; m <= N; ++m) {
    if (static_cast<std::size_t>(m) < values.size()) {
      row.emplace_back(values[m]);
    } else {
      row.emplace_back(std::monostate{});
    }
  }
}

bool wants_balance(ProtocolSelection p) { return p != ProtocolSelection::Optimal; }
bool wants_optimal(ProtocolSelection p) { return p != ProtocolSelection::Balance; }

std::vector<std::string> sweep_columns(int N, ProtocolSelection protocol) {
  std::vector<std::string> cols{"t", "l"};
  append(cols, indexed("f", N));
  append(cols, indexed("x0", N));
  append(cols, indexed("xop", N));
  for (const char* p : {"balance", "optimal"}) {
    if (std::string(p) == "balance" ? !wants_balance(protocol) : !wants_optimal(protocol)) continue;
    cols.push_back(std::string("W_") + p + "_kT");
    cols.push_back(std::string("W_") + p + "_E0");
    append(cols, indexed(std::string("Wm_") + p, N));
  }
  cols.push_back("l_residual");
  return cols;
}

std::vector<Cell> sweep_cells(const SweepRow& row, int N, ProtocolSelection protocol) {
  std::vector<Cell> cells{row.temperature, row.insertion_point};
  append_values(cells, row.fractions, N);
  append_values(cells, row.balance_points, N);
  append_values(cells, row.optimal_points, N);
  const auto add = [&](const std::optional<ProtocolOutcome>& o) {
    if (o) {
      cells.emplace_back(o->total_work.thermal);
      cells.emplace_back(o->total_work.energy);
      append_values(cells, o->per_outcome_log_work, N);
    } else {
      cells.insert(cells.end(), N + 3, std::monostate{});
    }
  };
  if (wants_balance(protocol)) add(row.balance);
  if (wants_optimal(protocol)) add(row.optimal);
  if (row.extremum_residual) {
    cells.emplace_back(*row.extremum_residual);
  } else {
    cells.emplace_back(std::monostate{});
  }
  return cells;
}

void emit(const RunConfig& config, const Table& table, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!config.out_path.empty()) {
    file.open(config.out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + config.out_path);
    os = &file;
  }
  if (config.format == OutputFormat::Json) {
    write_json(*os, table);
  } else {
    write_csv(*os, table);
  }
}

void dump_brackets(const NoBracketError& e, std::ostream& err) {
  err << "error: " << e.what() << "\n# scan grid (x, residual)\n";
  for (const auto& [x, r] : e.grid()) err << format_number(x) << ',' << format_number(r) << '\n';
}

}  // namespace

Table forces_table(const RunConfig& config) {
  config.validate();
  const EngineModel model = config.model();
  const int m = config.outcome;
  const double l = config.insertions.front();
  const StoppingPoints sp = solve_stopping_points(model);
  const SplitPartition at_l = model.split(l);
  const std::vector<double> xs = config.positions.empty() ? parse_grid("0.01:0.99:99") : config.positions;

  Table table;
  table.columns = {"x", "forward_force", "backward_force", "residual", "f_star", "log_f_star", "W_m", "W_m_weighted_E0"};
  for (double x : xs) {
    const ForceProfile prof = force_profile(model, x);
    const double forward = prof.outcome_forces[m];
    const double w = prof.log_fractions[m] - at_l.log_fractions[m];
    table.rows.push_back({x, forward, prof.backward_force, forward - prof.backward_force, prof.fractions[m],
                          prof.log_fractions[m], w, at_l.fractions[m] * w * model.temperature});
  }
  table.footer = {{"stats", std::string(to_string(model.statistics))},
                  {"n", static_cast<long long>(model.particle_count)},
                  {"t", model.temperature},
                  {"l", l},
                  {"m", static_cast<long long>(m)},
                  {"balance_point", sp.balance[m]},
                  {"optimal_point", sp.optimal[m]}};
  return table;
}

Table sweep_table(const RunConfig& config, std::size_t* failed_rows) {
  config.validate();
  if (config.temperature_grid == config.insertion_grid) {
    throw ConfigError("sweep needs exactly one of --t-grid or --l-grid");
  }
  const EngineModel model = config.model();
  const auto rows = config.temperature_grid
                        ? sweep_temperature(model, config.temperatures, config.insertions.front(), config.protocol,
                                            config.workers)
                        : sweep_wall(model, config.insertions, config.protocol, config.workers);
  Table table;
  table.columns = sweep_columns(model.particle_count, config.protocol);
  table.columns.push_back("error");
  std::size_t failed = 0;
  for (const auto& row : rows) {
    auto cells = sweep_cells(row, model.particle_count, config.protocol);
    cells.emplace_back(row.error);
    table.rows.push_back(std::move(cells));
    failed += row.ok() ? 0 : 1;
  }
  if (failed_rows) *failed_rows = failed;
  return table;
}

Table optimize_table(const RunConfig& config) {
  config.validate();
  if (config.temperature_grid || config.insertion_grid) throw ConfigError("optimize takes a single --t and --l");
  const EngineModel model = config.model();
  const double l = config.insertions.front();
  const double grid[] = {l};
  const SweepRow row = sweep_wall(model, grid, config.protocol, 1).front();
  if (!row.ok()) throw std::runtime_error(row.error);
  const auto peaks = insertion_work_maxima(model, row.optimal_points, config.insertion_grid_points);

  Table table;
  table.columns = sweep_columns(model.particle_count, config.protocol);
  append(table.columns, {"l_best", "W_best_kT", "W_best_E0", "work_peaks"});
  auto cells = sweep_cells(row, model.particle_count, config.protocol);
  if (peaks.empty()) {
    cells.insert(cells.end(), 3, std::monostate{});
  } else {
    const auto best = *std::max_element(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
      return a.work.thermal < b.work.thermal;
    });
    cells.insert(cells.end(), {best.position, best.work.thermal, best.work.energy});
  }
  cells.emplace_back(static_cast<long long>(peaks.size()));
  table.rows.push_back(std::move(cells));
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Work extraction of an N-particle quantum Szilard engine in a 1-D infinite well"};
  app.footer(kColumnHelp);
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig config;
  std::string stats = "boson";
  std::string protocol = "both";
  std::string format = "csv";
  double t_single = 1.0;
  double l_single = 0.5;
  std::string t_grid;
  std::string l_grid;
  std::string x_grid;

  app.set_config("--config", "", "Read key=value settings from PATH; flags override the file");
  app.add_option("--stats", stats, "boson|fermion|distinguishable|classical")
      ->check(CLI::IsMember({"boson", "fermion", "distinguishable", "classical"}));
  app.add_option("--n", config.particles, "Particle number N");
  auto* t_opt = app.add_option("--t", t_single, "Temperature k_BT/E0");
  auto* tg_opt = app.add_option("--t-grid", t_grid, "Temperature grid A:B:STEPS[:log]");
  auto* l_opt = app.add_option("--l", l_single, "Insertion point in units of L");
  auto* lg_opt = app.add_option("--l-grid", l_grid, "Insertion grid A:B:STEPS[:log]");
  t_opt->excludes(tg_opt);
  l_opt->excludes(lg_opt);
  app.add_option("--protocol", protocol, "balance|optimal|both")->check(CLI::IsMember({"balance", "optimal", "both"}));
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out_path, "Output file (default stdout)");
  app.add_option("--workers", config.workers, "Worker threads for sweeps");
  app.add_option("--m", config.outcome, "forces: outcome m");
  app.add_option("--x-grid", x_grid, "forces: wall positions A:B:STEPS");
  app.add_option("--l-points", config.insertion_grid_points, "optimize: insertion scan points");
  app.add_option("--eps", config.truncation.eps, "Level truncation threshold");
  app.add_option("--scan-points", config.solver.scan_points, "Root scan points");
  app.add_option("--root-tol", config.solver.root_tolerance, "Root tolerance in units of L");

  app.add_subcommand("forces", "Tabulate F_m(x), <F_p(x)> and W_m(l, x); footer holds x_m^0 and x_m^op");
  app.add_subcommand("sweep", "Temperature or insertion-point sweep of both protocols");
  app.add_subcommand("optimize", "Both protocols at one (t, l) and the best insertion point");
  app.add_subcommand("validate", "Run the fast invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    config.statistics = *parse_statistics(stats);
    config.protocol = protocol == "balance"   ? ProtocolSelection::Balance
                      : protocol == "optimal" ? ProtocolSelection::Optimal
                                              : ProtocolSelection::Both;
    config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    config.temperature_grid = !t_grid.empty();
    config.temperatures = config.temperature_grid ? parse_grid(t_grid) : std::vector<double>{t_single};
    config.insertion_grid = !l_grid.empty();
    config.insertions = config.insertion_grid ? parse_grid(l_grid) : std::vector<double>{l_single};
    if (!x_grid.empty()) config.positions = parse_grid(x_grid);
    config.validate();
    if (config.command != "sweep" && (config.temperature_grid || config.insertion_grid)) {
      throw ConfigError(config.command + " takes a single --t and --l");
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (config.command == "validate") {
      return print_validation(out, run_validation()) ? kSuccess : kComputationFailed;
    }
    if (config.command == "forces") {
      emit(config, forces_table(config), out);
      return kSuccess;
    }
    if (config.command == "optimize") {
      emit(config, optimize_table(config), out);
      return kSuccess;
    }
    std::size_t failed = 0;
    const Table table = sweep_table(config, &failed);
    emit(config, table, out);
    if (failed > 0) err << "warning: " << failed << " of " << table.rows.size() << " rows failed\n";
    return failed == table.rows.size() ? kComputationFailed : kSuccess;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NoBracketError& e) {
    dump_brackets(e, err);
    return kComputationFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailed;
  }
}

}  // namespace qsz::cli
