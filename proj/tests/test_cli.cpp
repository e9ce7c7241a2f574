#include <clocale>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qsz/cli/commands.hpp"
#include "qsz/cli/config.hpp"
#include "qsz/cli/table.hpp"

using namespace qsz;
using namespace qsz::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("grid parsing") {
  const auto lin = parse_grid("0.1:0.5:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.1);
  CHECK(lin.back() == 0.5);
  CHECK(lin[2] == doctest::Approx(0.3));
  const auto lg = parse_grid("1:100:3:log");
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK(lg.back() == 100.0);
  CHECK(parse_grid("0.5:0.5:1") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_grid("0.1:0.5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0.5:0.1:3"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a:b:3"), ConfigError);
  CHECK_THROWS_AS(parse_grid("-1:1:3:log"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1:3:cubic"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    CHECK(format_number(0.25) == "0.25");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST_CASE("table writers") {
  Table t;
  t.columns = {"x", "n", "note"};
  t.rows = {{0.5, 3LL, std::string("ok")}, {std::numeric_limits<double>::quiet_NaN(), std::monostate{}, std::string()}};
  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str() == "x,n,note\n0.5,3,ok\nnan,,\n");

  std::ostringstream js;
  write_json(js, t);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.is_array());
  CHECK(doc[0]["n"] == 3);
  CHECK(doc[1]["x"].is_null());

  t.footer = {{"balance_point", 0.25}};
  std::ostringstream csv2;
  write_csv(csv2, t);
  CHECK(csv2.str().find("# balance_point=0.25\n") != std::string::npos);
  std::ostringstream js2;
  write_json(js2, t);
  CHECK(nlohmann::json::parse(js2.str())["footer"]["balance_point"] == 0.25);
}

TEST_CASE("run config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.insertions = {1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.insertions = {0.5};
  c.temperatures = {1.0, 0.5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.temperatures = {1.0};
  c.outcome = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.outcome = 1;
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == kConfigError);
  CHECK(invoke({"frobnicate"}).code == kConfigError);
  CHECK(invoke({"sweep", "--stats", "anyon", "--t-grid", "1:2:2"}).code == kConfigError);
  CHECK(invoke({"forces", "--t", "-1"}).code == kConfigError);
  CHECK(invoke({"forces", "--t-grid", "1:2:3"}).code == kConfigError);
  CHECK(invoke({"sweep", "--t", "1"}).code == kConfigError);
  CHECK(invoke({"sweep", "--t", "1", "--t-grid", "1:2:2"}).code == kConfigError);
  CHECK(invoke({"validate"}).code == kSuccess);
  const auto failed = invoke({"sweep", "--t-grid", "1e7:1e8:2"});
  CHECK(failed.code == kComputationFailed);
  CHECK(failed.err.find("2 of 2 rows failed") != std::string::npos);
  CHECK(invoke({"--help"}).code == kSuccess);
  CHECK(invoke({"--help"}).out.find("Wm_<p>_m") != std::string::npos);
}

TEST_CASE("forces command") {
  const auto r = invoke({"forces", "--stats", "boson", "--n", "3", "--t", "1", "--m", "1", "--x-grid", "0.1:0.9:9"});
  REQUIRE(r.code == kSuccess);
  CHECK(first_line(r.out) == "x,forward_force,backward_force,residual,f_star,log_f_star,W_m,W_m_weighted_E0");
  const auto pos = r.out.find("# balance_point=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::fabs(std::stod(r.out.substr(pos + 16)) - 0.443) <= 0.005);
  const auto op = r.out.find("# optimal_point=");
  CHECK(std::fabs(std::stod(r.out.substr(op + 16)) - 0.490) <= 0.005);
}

TEST_CASE("sweep output is identical for any worker count") {
  const std::vector<std::string> base{"sweep", "--stats", "fermion", "--n", "3", "--t-grid", "0.5:20:12:log"};
  auto one = base;
  one.insert(one.end(), {"--workers", "1"});
  auto eight = base;
  eight.insert(eight.end(), {"--workers", "8"});
  const auto a = invoke(one);
  const auto b = invoke(eight);
  REQUIRE(a.code == kSuccess);
  CHECK(a.out == b.out);
}

TEST_CASE("json rows carry the csv column names") {
  const auto csv = invoke({"sweep", "--l-grid", "0.3:0.7:3", "--protocol", "optimal"});
  const auto js = invoke({"sweep", "--l-grid", "0.3:0.7:3", "--protocol", "optimal", "--format", "json"});
  REQUIRE(csv.code == kSuccess);
  const auto doc = nlohmann::ordered_json::parse(js.out);
  REQUIRE(doc.size() == 3);
  std::string header;
  for (const auto& [key, value] : doc[0].items()) header += (header.empty() ? "" : ",") + key;
  CHECK(header == first_line(csv.out));
  CHECK(header.find("W_balance_kT") == std::string::npos);
}

TEST_CASE("config file with flag override") {
  const auto dir = std::filesystem::temp_directory_path() / "qsz_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.cfg";
  const auto out = dir / "out.csv";
  {
    std::ofstream f(cfg);
    f << "# comment\nstats=fermion\nn=2\nl-grid=0.25:0.75:3\nprotocol=optimal\nout=" << out.string() << "\n";
  }
  const auto r = invoke({"sweep", "--config", cfg.string(), "--n", "3"});
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  CHECK(header.find("f_3") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("optimize command") {
  const auto r = invoke({"optimize", "--stats", "fermion", "--n", "2", "--t", "1", "--format", "json"});
  REQUIRE(r.code == kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc[0]["work_peaks"] == 2);
  CHECK(doc[0]["l_best"].get<double>() != doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("validate report is reproducible") {
  const auto a = invoke({"validate"});
  const auto b = invoke({"validate"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("FAIL") == std::string::npos);
}
