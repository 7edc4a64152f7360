#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheis/psi_limit.hpp"
#include "qheis/report.hpp"
#include "qheis/suites.hpp"

namespace qheis::cli {

/// Raised on malformed configuration or command usage (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One entry in the verification-suite registry.
struct SuiteEntry {
  std::string name;
  SuiteReport (*run)(const ModelParams&, const Grid&, std::uint64_t);
  Grid grid;       ///< default grid for this suite
  bool quantum;    ///< requires a nonzero deformation parameter
};

/// All suites in canonical execution order with their default grids.
inline const std::vector<SuiteEntry>& suite_registry() {
  static const Grid flat{{64, 64, 16}, {4.0, 4.0, 1.0}};
  static const Grid tall{{64, 64, 32}, {4.0, 4.0, 1.0}};
  static const Grid wide{{64, 64, 32}, {4.0, 4.0, 2.0}};
  static const std::vector<SuiteEntry> reg{
      {"bialgebra", suite_bialgebra, flat, false},
      {"algebra", suite_algebra, flat, true},
      {"pentagon", suite_pentagon, flat, true},
      {"comultiplication", suite_comultiplication, tall, true},
      {"antipode", suite_antipode, tall, true},
      {"haar", suite_haar, wide, true},
      {"rmatrix", suite_rmatrix, flat, true},
      {"qybe", suite_qybe, flat, true},
      {"quasitriangular", suite_quasitriangular, flat, true},
      {"limits", suite_limits, flat, false},
  };
  return reg;
}

inline const SuiteEntry* find_suite(const std::string& name) {
  for (const auto& e : suite_registry())
    if (e.name == name) return &e;
  return nullptr;
}

/// Per-suite configuration section: optional grid override and per-check
/// tolerance overrides keyed by check name.
struct SuiteConfig {
  std::optional<std::array<std::size_t, 3>> N;
  std::optional<std::array<double, 3>> L;
  std::map<std::string, double> tol;
};

/// Full run configuration with embedded defaults.  The file format is
/// line-oriented `key = value` text; a `[suite]` header opens the section
/// for that suite.
struct RunConfig {
  ModelParams params{1, 1.0, 1.0};
  std::uint64_t seed = 7;
  std::string out_dir = "reports";
  std::vector<std::string> suites;  ///< empty means every registered suite
  std::size_t sweep_points = 4;
  std::size_t sweep_samples = 200000;
  std::map<std::string, SuiteConfig> sections;

  /// Suites selected by this config, in registry order.
  std::vector<std::string> selected() const {
    if (suites.empty()) {
      std::vector<std::string> all;
      for (const auto& e : suite_registry()) all.push_back(e.name);
      return all;
    }
    return suites;
  }

  /// Grid used for one suite: registry default plus section overrides.
  Grid grid_for(const std::string& name) const {
    const SuiteEntry* e = find_suite(name);
    if (!e) throw UsageError("unknown suite: " + name);
    Grid g = e->grid;
    const auto it = sections.find(name);
    if (it != sections.end()) {
      if (it->second.N) g.N = *it->second.N;
      if (it->second.L) g.L = *it->second.L;
    }
    try {
      g.validate();
    } catch (const std::exception& ex) {
      throw UsageError("suite '" + name + "': " + ex.what());
    }
    return g;
  }

  void validate() const {
    if (params.n < 1) throw UsageError("n must be >= 1");
    if (params.hbar < 0.0) throw UsageError("hbar must be >= 0");
    if (sweep_points < 3)
      throw UsageError("sweep needs at least 3 dyadic points for ratios");
    if (sweep_samples < 1) throw UsageError("sweep_samples must be >= 1");
    for (const auto& name : suites)
      if (!find_suite(name)) throw UsageError("unknown suite: " + name);
    for (const auto& [name, sec] : sections) {
      if (!find_suite(name)) throw UsageError("unknown suite section: " + name);
      for (const auto& [check, tol] : sec.tol)
        if (tol <= 0.0)
          throw UsageError("tolerance override must be positive: " + name +
                           "/" + check);
      (void)grid_for(name);
    }
  }

  /// Nonzero deformation parameter is required unless only classical-limit
  /// paths are selected; names the first offending suite.
  void require_lambda_for_selection() const {
    if (params.lambda != 0.0) return;
    for (const auto& name : selected())
      if (find_suite(name)->quantum)
        throw UsageError("lambda = 0 but suite '" + name +
                         "' needs a nonzero deformation parameter; select "
                         "only classical-limit suites or set lambda != 0");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& value, const std::string& key) {
  std::istringstream in(value);
  T out;
  in >> out;
  if (in.fail()) throw UsageError("bad value for '" + key + "': " + value);
  std::string rest;
  if (in >> rest) throw UsageError("trailing text for '" + key + "': " + value);
  return out;
}

template <class T>
std::array<T, 3> parse_triple(const std::string& value,
                              const std::string& key) {
  std::istringstream in(value);
  std::array<T, 3> out;
  for (auto& x : out)
    if (!(in >> x))
      throw UsageError("'" + key + "' needs three values: " + value);
  std::string rest;
  if (in >> rest) throw UsageError("trailing text for '" + key + "': " + value);
  return out;
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented config text into a RunConfig, starting from the
/// embedded defaults.  Unknown keys are usage errors.
inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw UsageError("line " + std::to_string(lineno) +
                         ": unterminated section header");
      section = detail::trim(s.substr(1, s.size() - 2));
      if (section.empty())
        throw UsageError("line " + std::to_string(lineno) + ": empty section");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw UsageError("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string value = detail::trim(s.substr(eq + 1));
    if (key.empty())
      throw UsageError("line " + std::to_string(lineno) + ": empty key");

    if (section.empty()) {
      if (key == "n")
        cfg.params.n = detail::parse_number<std::size_t>(value, key);
      else if (key == "lambda")
        cfg.params.lambda = detail::parse_number<double>(value, key);
      else if (key == "hbar")
        cfg.params.hbar = detail::parse_number<double>(value, key);
      else if (key == "seed")
        cfg.seed = detail::parse_number<std::uint64_t>(value, key);
      else if (key == "out")
        cfg.out_dir = value;
      else if (key == "suites")
        cfg.suites = (value == "all") ? std::vector<std::string>{}
                                      : detail::split_list(value);
      else if (key == "sweep_points")
        cfg.sweep_points = detail::parse_number<std::size_t>(value, key);
      else if (key == "sweep_samples")
        cfg.sweep_samples = detail::parse_number<std::size_t>(value, key);
      else
        throw UsageError("line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    } else {
      auto& sec = cfg.sections[section];
      if (key == "N")
        sec.N = detail::parse_triple<std::size_t>(value, key);
      else if (key == "L")
        sec.L = detail::parse_triple<double>(value, key);
      else if (key.rfind("tol.", 0) == 0) {
        const std::string check = key.substr(4);
        if (check.empty())
          throw UsageError("line " + std::to_string(lineno) +
                           ": empty check name in tolerance override");
        sec.tol[check] = detail::parse_number<double>(value, key);
      } else
        throw UsageError("line " + std::to_string(lineno) + ": unknown key '" +
                         key + "' in section [" + section + "]");
    }
  }
  cfg.validate();
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  return parse_config(in);
}

/// Renders the embedded defaults in the accepted config syntax; parsing the
/// output reproduces the default RunConfig.
inline std::string default_config_text() {
  const RunConfig cfg;
  std::ostringstream out;
  out << "# model\n";
  out << "n = " << cfg.params.n << "\n";
  out << "lambda = " << cfg.params.lambda << "\n";
  out << "hbar = " << cfg.params.hbar << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out = " << cfg.out_dir << "\n";
  out << "suites = all\n";
  out << "\n# sweeps: dyadic points and Monte-Carlo sample count\n";
  out << "sweep_points = " << cfg.sweep_points << "\n";
  out << "sweep_samples = " << cfg.sweep_samples << "\n";
  out << "\n# per-suite grids (N = points per axis, L = half-width per axis);"
         "\n# tolerance overrides go in these sections as tol.<check> = "
         "<value>\n";
  for (const auto& e : suite_registry()) {
    out << "\n[" << e.name << "]\n";
    out << "N = " << e.grid.N[0] << " " << e.grid.N[1] << " " << e.grid.N[2]
        << "\n";
    out << "L = " << e.grid.L[0] << " " << e.grid.L[1] << " " << e.grid.L[2]
        << "\n";
  }
  return out.str();
}

/// Runs one suite under a config: registry function, section grid, then
/// tolerance overrides re-applied to the produced checks.
inline SuiteReport run_suite(const RunConfig& cfg, const std::string& name) {
  const SuiteEntry* e = find_suite(name);
  if (!e) throw UsageError("unknown suite: " + name);
  SuiteReport rep = e->run(cfg.params, cfg.grid_for(name), cfg.seed);
  const auto it = cfg.sections.find(name);
  if (it != cfg.sections.end()) {
    for (auto& c : rep.checks) {
      const auto tol = it->second.tol.find(c.name);
      if (tol != it->second.tol.end()) {
        c.tol = tol->second;
        c.pass = c.defect < c.tol;
      }
    }
  }
  return rep;
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace detail

/// `verify`: run the selected suites, write one JSON report per suite into
/// the output directory, print a one-line status per suite.  Exit 0 if all
/// checks pass, 1 with a failing-check summary otherwise.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  cfg.require_lambda_for_selection();
  std::filesystem::create_directories(cfg.out_dir);
  bool all_pass = true;
  std::vector<std::pair<std::string, CheckResult>> failures;
  for (const auto& name : cfg.selected()) {
    const SuiteReport rep = run_suite(cfg, name);
    detail::write_text_file(std::filesystem::path(cfg.out_dir) /
                                (name + ".json"),
                            rep.to_json().dump(2) + "\n");
    out << "suite " << name << ": " << (rep.pass() ? "PASS" : "FAIL") << " ("
        << rep.checks.size() << " checks)\n";
    if (!rep.pass()) {
      all_pass = false;
      for (const auto& c : rep.checks)
        if (!c.pass) failures.emplace_back(name, c);
    }
  }
  if (!all_pass) {
    err << "failing checks:\n";
    for (const auto& [suite, c] : failures)
      err << "  " << suite << "/" << c.name << ": defect " << c.defect
          << " vs tol " << c.tol << "  [" << c.anchor << "]\n";
    return 1;
  }
  return 0;
}

/// `sweep`: emit hbar_sweep.csv and lambda_sweep.csv with the configured
/// number of dyadic points.  Deterministic in (config, seed).
inline int cmd_sweep(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  (void)err;
  if (cfg.sweep_points < 3)
    throw UsageError("sweep needs at least 3 dyadic points for ratios");
  std::filesystem::create_directories(cfg.out_dir);

  std::vector<double> hbars, lambdas;
  double h = 1.0, l = 0.5;
  for (std::size_t k = 0; k < cfg.sweep_points; ++k, h *= 0.5, l *= 0.5) {
    hbars.push_back(h);
    lambdas.push_back(l);
  }

  const SweepFamily fam = make_sweep_family(cfg.seed);
  const Grid grid = cfg.grid_for("limits");
  const auto hs = hbar_sweep_table(fam.phi_cf, fam.psi_cf, cfg.params, grid,
                                   hbars);
  const auto ls = lambda_sweep_table(fam.F, lambdas, cfg.sweep_samples,
                                     cfg.seed ^ 0x77ULL);
  detail::write_text_file(std::filesystem::path(cfg.out_dir) /
                              "hbar_sweep.csv",
                          hs.csv + "\n");
  detail::write_text_file(std::filesystem::path(cfg.out_dir) /
                              "lambda_sweep.csv",
                          ls.csv + "\n");
  out << "hbar_sweep.csv: " << cfg.sweep_points
      << " rows, worst ratio " << hs.worst_ratio << "\n";
  out << "lambda_sweep.csv: " << cfg.sweep_points
      << " rows, worst ratio " << ls.worst_ratio << "\n";
  return 0;
}

namespace detail {

/// Row of the report table: the displayed check is the one with the largest
/// defect-to-tolerance ratio in its suite.
struct ReportRow {
  std::string suite;
  double defect = 0.0;
  double tol = 0.0;
  std::string anchor;
  bool pass = false;
};

}  // namespace detail

/// `report`: read every *.json report in the directory and render a text
/// table (failures first).  Missing or corrupt reports are itemized as
/// warnings; exit is nonzero on warnings, failures, or an empty directory.
inline int cmd_report(const std::string& dir, std::ostream& out,
                      std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> warnings;
  std::vector<detail::ReportRow> rows;

  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    err << "report: not a directory: " << dir << "\n";
    return 2;
  }
  if (files.empty()) {
    err << "no reports found in " << dir << "\n";
    return 1;
  }

  for (const auto& path : files) {
    try {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open file");
      const auto j = nlohmann::json::parse(in);
      detail::ReportRow row;
      row.suite = j.at("suite").get<std::string>();
      row.pass = true;
      double worst = -1.0;
      for (const auto& c : j.at("checks")) {
        const double defect = c.at("defect").get<double>();
        const double tol = c.at("tol").get<double>();
        if (!c.at("pass").get<bool>()) row.pass = false;
        const double ratio = tol > 0.0 ? defect / tol : defect;
        if (ratio > worst) {
          worst = ratio;
          row.defect = defect;
          row.tol = tol;
          row.anchor = c.at("anchor").get<std::string>();
        }
      }
      if (worst < 0.0) throw std::runtime_error("report has no checks");
      rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      warnings.push_back(path.filename().string() + ": " + ex.what());
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.pass < b.pass;
                   });

  char buf[64];
  out << "suite              worst defect  tolerance   status  anchor\n";
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%-18s %-13.3e %-11.3e %-7s ",
                  row.suite.c_str(), row.defect, row.tol,
                  row.pass ? "PASS" : "FAIL");
    out << buf << row.anchor << "\n";
  }

  bool any_fail = false;
  for (const auto& row : rows) any_fail = any_fail || !row.pass;
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return (any_fail || !warnings.empty()) ? 1 : 0;
}

}  // namespace qheis::cli
