#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qheis/cli.hpp"

namespace {

/// Shared option state filled by CLI11 before dispatch.
struct Options {
  std::string config_path;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

qheis::cli::RunConfig load_config(const Options& opt) {
  qheis::cli::RunConfig cfg;
  if (!opt.config_path.empty())
    cfg = qheis::cli::parse_config_file(opt.config_path);
  if (!opt.suites.empty()) cfg.suites = opt.suites;
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for the deformed Heisenberg group "
               "algebra: Hopf-algebra suites, sweeps, and report rendering"};
  app.require_subcommand(0, 1);
  // Global flags may be written after the subcommand name.
  app.fallthrough(true);

  Options opt;
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "print the built-in configuration and exit");
  app.add_option("--config", opt.config_path, "configuration file");
  app.add_option("--suite", opt.suites, "suite selection (repeatable)");
  app.add_option("--seed", opt.seed, "random-stream seed");
  app.add_option("--out", opt.out_dir, "output directory");

  auto* verify = app.add_subcommand(
      "verify", "run the selected suites and write JSON reports");
  auto* sweep = app.add_subcommand(
      "sweep", "emit hbar_sweep.csv and lambda_sweep.csv");
  auto* report = app.add_subcommand(
      "report", "render a text summary of a directory of JSON reports");
  std::string report_dir;
  report->add_option("dir", report_dir,
                     "report directory (defaults to --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (print_defaults) {
      std::cout << qheis::cli::default_config_text();
      return 0;
    }
    if (verify->parsed())
      return qheis::cli::cmd_verify(load_config(opt), std::cout, std::cerr);
    if (sweep->parsed())
      return qheis::cli::cmd_sweep(load_config(opt), std::cout, std::cerr);
    if (report->parsed()) {
      const auto cfg = load_config(opt);
      const std::string dir = report_dir.empty() ? cfg.out_dir : report_dir;
      return qheis::cli::cmd_report(dir, std::cout, std::cerr);
    }
    std::cerr << "usage: qheis-cli [verify|sweep|report] [options]; see "
                 "--help\n";
    return 2;
  } catch (const qheis::cli::UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
