#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qheis/cli.hpp"

using namespace qheis;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("qheis-cli-" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("default config text round-trips through the parser") {
  const std::string text = cli::default_config_text();
  std::istringstream in(text);
  const auto cfg = cli::parse_config(in);
  const cli::RunConfig def;
  CHECK(cfg.params.n == def.params.n);
  CHECK(cfg.params.lambda == def.params.lambda);
  CHECK(cfg.params.hbar == def.params.hbar);
  CHECK(cfg.seed == def.seed);
  CHECK(cfg.out_dir == def.out_dir);
  CHECK(cfg.suites.empty());
  CHECK(cfg.sweep_points == def.sweep_points);
  CHECK(cfg.sweep_samples == def.sweep_samples);
  // Every registered suite has a section and its registry grid survives.
  for (const auto& e : cli::suite_registry()) {
    REQUIRE(cfg.sections.contains(e.name));
    CHECK(cfg.grid_for(e.name) == e.grid);
  }
}

TEST_CASE("config parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return cli::parse_config(in);
  };
  CHECK_THROWS_AS(parse("bogus_key = 1\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("n 1\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("lambda = abc\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("[pentagon\nN = 64 64 16\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("[nosuchsuite]\nN = 64 64 16\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("[pentagon]\ntol.pentagon = -1\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("[pentagon]\nN = 63 64 16\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("suites = pentagon, nosuchsuite\n"), cli::UsageError);
  CHECK_THROWS_AS(parse("sweep_points = 2\n"), cli::UsageError);

  // Comments, blank lines and spacing are accepted.
  const auto cfg = parse("# comment\n\n  seed=41\n[haar]\n  L = 4 4 2\n");
  CHECK(cfg.seed == 41);
  CHECK(cfg.grid_for("haar").L[2] == 2.0);
}

TEST_CASE("tolerance overrides re-grade checks") {
  std::istringstream in("suites = bialgebra\n[bialgebra]\ntol.cybe = 1e-30\n");
  const auto cfg = cli::parse_config(in);
  const auto rep = cli::run_suite(cfg, "bialgebra");
  bool saw = false;
  for (const auto& c : rep.checks)
    if (c.name == "cybe") {
      saw = true;
      CHECK(c.tol == 1e-30);
    }
  CHECK(saw);
}

TEST_CASE("verify writes one report per selected suite and sets exit codes") {
  TempDir tmp("verify");
  cli::RunConfig cfg;
  cfg.suites = {"bialgebra", "pentagon"};
  cfg.out_dir = (tmp.path / "reports").string();
  std::ostringstream out, err;

  CHECK(cli::cmd_verify(cfg, out, err) == 0);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "bialgebra.json"));
  CHECK(fs::exists(fs::path(cfg.out_dir) / "pentagon.json"));
  CHECK_FALSE(fs::exists(fs::path(cfg.out_dir) / "algebra.json"));
  CHECK(out.str().find("suite pentagon: PASS") != std::string::npos);

  // An unreachable tolerance override turns the run into a failure (1).
  cfg.sections["pentagon"].tol["pentagon"] = 1e-300;
  std::ostringstream out2, err2;
  CHECK(cli::cmd_verify(cfg, out2, err2) == 1);
  CHECK(err2.str().find("pentagon/pentagon") != std::string::npos);

  // lambda = 0 with a quantum suite selected is a usage error.
  cli::RunConfig zero;
  zero.params.lambda = 0.0;
  zero.suites = {"pentagon"};
  zero.out_dir = (tmp.path / "zero").string();
  CHECK_THROWS_WITH_AS(cli::cmd_verify(zero, out, err),
                       doctest::Contains("pentagon"), cli::UsageError);

  // ... but classical-limit-only selections are allowed at lambda = 0.
  cli::RunConfig classical;
  classical.params.lambda = 0.0;
  classical.suites = {"bialgebra"};
  classical.out_dir = (tmp.path / "classical").string();
  CHECK(cli::cmd_verify(classical, out, err) == 0);
}

TEST_CASE("verify reports are byte-identical across reruns") {
  TempDir tmp("determinism");
  cli::RunConfig cfg;
  cfg.suites = {"bialgebra", "pentagon", "qybe"};
  cfg.seed = 31;
  std::ostringstream sink;

  cfg.out_dir = (tmp.path / "a").string();
  REQUIRE(cli::cmd_verify(cfg, sink, sink) == 0);
  cfg.out_dir = (tmp.path / "b").string();
  REQUIRE(cli::cmd_verify(cfg, sink, sink) == 0);
  for (const auto& name : cfg.suites)
    CHECK(slurp(tmp.path / "a" / (name + ".json")) ==
          slurp(tmp.path / "b" / (name + ".json")));
}

TEST_CASE("sweep emits dyadic CSV tables, byte-identical per seed") {
  TempDir tmp("sweep");
  cli::RunConfig cfg;
  cfg.sweep_points = 3;
  cfg.sweep_samples = 20000;
  cfg.seed = 23;
  std::ostringstream sink;

  cfg.out_dir = (tmp.path / "a").string();
  REQUIRE(cli::cmd_sweep(cfg, sink, sink) == 0);
  cfg.out_dir = (tmp.path / "b").string();
  REQUIRE(cli::cmd_sweep(cfg, sink, sink) == 0);

  for (const char* name : {"hbar_sweep.csv", "lambda_sweep.csv"}) {
    const std::string a = slurp(tmp.path / "a" / name);
    CHECK(a == slurp(tmp.path / "b" / name));
    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    CHECK(line == "parameter,defect_L1,defect_L2,ratio");
    int rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 3);
    CHECK(a.find(',') != std::string::npos);
    CHECK(a.find(';') == std::string::npos);
  }

  // Fewer than 3 points cannot produce ratio diagnostics.
  cfg.sweep_points = 1;
  CHECK_THROWS_AS(cfg.validate(), cli::UsageError);
}

TEST_CASE("report renders a table with failures first and flags corruption") {
  TempDir tmp("report");
  std::ostringstream out, err;

  // Empty directory.
  CHECK(cli::cmd_report(tmp.path.string(), out, err) == 1);
  CHECK(err.str().find("no reports found") != std::string::npos);

  // One passing and one failing report plus one corrupt file.
  cli::RunConfig cfg;
  cfg.out_dir = tmp.path.string();
  cfg.suites = {"bialgebra", "pentagon"};
  cfg.sections["pentagon"].tol["pentagon"] = 1e-300;
  std::ostringstream sink;
  REQUIRE(cli::cmd_verify(cfg, sink, sink) == 1);
  std::ofstream(tmp.path / "broken.json") << "{ not json";

  std::ostringstream out2, err2;
  CHECK(cli::cmd_report(tmp.path.string(), out2, err2) == 1);
  const std::string table = out2.str();
  const auto fail_pos = table.find("pentagon");
  const auto pass_pos = table.find("bialgebra");
  REQUIRE(fail_pos != std::string::npos);
  REQUIRE(pass_pos != std::string::npos);
  CHECK(fail_pos < pass_pos);
  CHECK(table.find("FAIL") != std::string::npos);
  CHECK(err2.str().find("broken.json") != std::string::npos);

  // All-pass directory exits 0 and shows anchors.
  TempDir good("report-good");
  cli::RunConfig ok;
  ok.out_dir = good.path.string();
  ok.suites = {"bialgebra"};
  REQUIRE(cli::cmd_verify(ok, sink, sink) == 0);
  std::ostringstream out3, err3;
  CHECK(cli::cmd_report(good.path.string(), out3, err3) == 0);
  CHECK(out3.str().find("PASS") != std::string::npos);
}

TEST_CASE("installed binary honors the documented exit-code contract") {
  const std::string exe = QHEIS_CLI_PATH;
  TempDir tmp("subproc");
  auto run = [&](const std::string& args) {
    const std::string cmd = exe + " " + args + " >" +
                            (tmp.path / "stdout.txt").string() + " 2>" +
                            (tmp.path / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };

  CHECK(run("--print-defaults") == 0);
  {
    std::istringstream in(slurp(tmp.path / "stdout.txt"));
    CHECK_NOTHROW(cli::parse_config(in));
  }
  CHECK(run("--no-such-flag") == 2);
  CHECK(run("") == 2);
  CHECK(run("report " + (tmp.path / "missing").string()) == 2);
  const std::string out = (tmp.path / "reports").string();
  CHECK(run("verify --suite bialgebra --suite pentagon --out " + out) == 0);
  CHECK(run("report " + out) == 0);
  CHECK(slurp(tmp.path / "stdout.txt").find("bialgebra") !=
        std::string::npos);
  CHECK(run("verify --suite nosuchsuite --out " + out) == 2);
}
