#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bergman/config.hpp"
#include "bergman/report.hpp"
#include "bergman/runner.hpp"

using namespace bergman;
using Catch::Matchers::WithinRel;

namespace {

std::string cli_path() {
  const char* p = std::getenv("BERGMAN_CLI");
  return p ? p : "";
}

int run_cli(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = cli_path() + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid syntax") {
  CHECK(parse_grid("0.5", false, "r") == std::vector<double>{0.5});
  CHECK(parse_grid("0.1, 0.2,0.3", false, "r") == std::vector<double>{0.1, 0.2, 0.3});
  const auto g = parse_grid("1e-1..1e-4", true, "deltas");
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 1e-4);
  CHECK_THAT(g[1], WithinRel(1e-2, 1e-12));
  const auto l = parse_grid("0.1..0.9:9", false, "r");
  REQUIRE(l.size() == 9);
  CHECK_THAT(l[4], WithinRel(0.5, 1e-14));
  CHECK(parse_grid("0..1", false, "alpha").size() == 5);
  CHECK(parse_int_grid("1..5", "n") == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(parse_grid("abc", false, "r"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0..1", true, "deltas"), ConfigError);
  CHECK_THROWS_AS(parse_int_grid("1.5", "n"), ConfigError);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig c;
  c.domain = "ball2";
  c.resolution = 24;
  c.seed = 0xdeadbeefcafeULL;
  c.samples = 7;
  c.deltas = {0.1, 0.01};
  c.r = {0.3};
  c.alpha = {0.0, 1.5};
  c.t = {0.5};
  c.n = {1, 2};
  c.format = "json";
  c.out = "x.json";
  c.tolerance_scale = 2.0;
  CHECK(config_from_json(nlohmann::ordered_json::parse(to_json(c).dump())) == c);
  CHECK(config_from_json(to_json(ExperimentConfig{})) == ExperimentConfig{});
  CHECK(config_from_json(nlohmann::ordered_json::parse(R"({"deltas": "1e-1..1e-3", "n": "1..3"})")).deltas.size() == 3);
  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"colour": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"seed": "x"})")), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(validate(c));
  c.domain = "torus";
  CHECK_THROWS_AS(validate(c), PreconditionError);
  c = {};
  c.deltas = {1.5};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.format = "xml";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.resolution = 2;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.tolerance_scale = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("report serialization") {
  VerificationReport r = upper_bound_report("x.y", "disc", 1.0 / 3.0, 2.0, 1e-9, 1e-17);
  r.input("w", "0.5 0.25").input("t", 0.1);
  CHECK(r.pass);
  CHECK(to_csv_row(r).find(",true,") != std::string::npos);
  CHECK(from_json(to_json(r)) == r);

  VerificationReport f = equality_report("a.b", "ball2", 1.0, 1.5, 0.1);
  CHECK_FALSE(f.pass);
  CHECK(from_json(to_json(f)) == f);

  std::ostringstream os;
  ReportWriter w(os, ReportFormat::Csv);
  w.write(r);
  w.write(f);
  w.finish();
  const std::string s = os.str();
  CHECK(s.rfind(csv_header(), 0) == 0);
  CHECK(s.find(csv_header(), 1) == std::string::npos);
  // fields holding commas are quoted
  VerificationReport q = r;
  q.inputs = {{"weight", "dfindex(t=0.5,t'=1)"}};
  CHECK(to_csv_row(q).find("\"weight=dfindex(t=0.5,t'=1)\"") != std::string::npos);
  // 17 significant digits
  CHECK(fmt17(0.1) == "0.10000000000000001");
}

TEST_CASE("runner output is ordered and deterministic") {
  ExperimentConfig c;
  c.n = {1, 2, 3};
  const RunResult a = run("verify-infimum", c);
  REQUIRE(a.reports.size() == 6);
  CHECK(a.failed == 0);
  CHECK(a.reports[0].domain == "n=1");
  CHECK(a.reports[5].domain == "n=3");
  set_thread_count(4);
  const RunResult b = run("verify-infimum", c);
  set_thread_count(0);
  CHECK(a.reports == b.reports);
}

TEST_CASE("tolerance scale re-decides pass") {
  ExperimentConfig c;
  c.r = {0.2};
  const RunResult a = run("verify-sharp-constant", c);
  c.tolerance_scale = 1e6;
  const RunResult b = run("verify-sharp-constant", c);
  REQUIRE(a.reports.size() == b.reports.size());
  CHECK(b.reports[0].tolerance == a.reports[0].tolerance * 1e6);
}

TEST_CASE("unsupported pairings are rejected") {
  ExperimentConfig c;
  c.domain = "ellipsoid2";
  CHECK_THROWS_AS(run("verify-green", c), UnsupportedDomain);
  CHECK_THROWS_AS(run("verify-infimum", c), UnsupportedDomain);
  CHECK_THROWS_AS(run("nope", ExperimentConfig{}), ConfigError);
}

TEST_CASE("all is a union without duplicates") {
  ExperimentConfig c;
  c.samples = 2;
  c.deltas = {1e-1, 1e-2, 1e-3};
  const RunResult r = run("all", c);
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (const auto& rep : r.reports) keys.insert({rep.statement_id, rep.domain, rep.inputs_string()});
  CHECK(keys.size() == r.reports.size());
  std::set<std::string> ids;
  for (const auto& rep : r.reports) ids.insert(rep.statement_id);
  for (const char* id : {"kernel.reproduce", "boundary_ratio.upper", "weighted_projection.bound", "sharp_example.ratio",
                         "green_sublevel.annulus", "green_sublevel.mass", "hardy_limit.boundary_norm", "toeplitz.slope",
                         "infimum.bound", "szego_bergman.lower"})
    CHECK(ids.count(id) == 1);
}

TEST_CASE("command-line exit codes") {
  if (cli_path().empty()) SKIP("BERGMAN_CLI not set");
  CHECK(run_cli("verify-infimum --n 1") == 0);
  CHECK(run_cli("verify-sharp-constant --r 0.2") == 1);  // the 0.2 sharper row fails
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("verify-green --domain ellipsoid2") == 2);
  CHECK(run_cli("verify-szego --domain disc --format yaml") == 2);
  CHECK(run_cli("verify-hardy --config /nonexistent.json") == 2);
}

TEST_CASE("flags override the config file") {
  if (cli_path().empty()) SKIP("BERGMAN_CLI not set");
  const std::string cfg = "cli_test_config.json";
  {
    std::ofstream os(cfg);
    os << R"({"n": [1, 2, 3], "format": "json"})";
  }
  REQUIRE(run_cli("verify-infimum --config " + cfg, "cli_a.txt") == 0);
  REQUIRE(run_cli("verify-infimum --config " + cfg + " --n 2 --format csv", "cli_b.txt") == 0);
  const std::string a = slurp("cli_a.txt"), b = slurp("cli_b.txt");
  CHECK(std::count(a.begin(), a.end(), '\n') == 6);
  CHECK(a[0] == '{');
  CHECK(b.rfind(csv_header(), 0) == 0);
  CHECK(std::count(b.begin(), b.end(), '\n') == 3);
  // --out writes the same bytes as stdout
  REQUIRE(run_cli("verify-infimum --n 2 --out cli_c.txt") == 0);
  CHECK(slurp("cli_c.txt") == b);
  std::remove(cfg.c_str());
  std::remove("cli_a.txt");
  std::remove("cli_b.txt");
  std::remove("cli_c.txt");
}
