#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheis/grid.hpp"
#include "qheis/params.hpp"

namespace qheis {

/// One verified identity: the mathematical anchor string states the identity
/// being checked, defect is the measured deviation, tol the pass threshold.
struct CheckResult {
  std::string name;
  std::string anchor;
  double defect = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Deterministic record of one verification suite run.
struct SuiteReport {
  std::string suite;
  ModelParams params;
  Grid grid;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  nlohmann::json artifacts = nlohmann::json::object();
  // Kept at zero by default so identical runs serialize byte-identically;
  // callers may fill it for interactive use.
  std::int64_t wall_ms = 0;

  void add(const std::string& name, const std::string& anchor, double defect,
           double tol) {
    checks.push_back({name, anchor, defect, tol, defect < tol});
  }

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  double worst_defect() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.defect);
    return w;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["params"] = {{"n", params.n},
                   {"lambda", params.lambda},
                   {"hbar", params.hbar},
                   {"grid", {{"N", grid.N}, {"L", grid.L}}},
                   {"seed", seed}};
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name},
                             {"anchor", c.anchor},
                             {"defect", c.defect},
                             {"tol", c.tol},
                             {"pass", c.pass}});
    if (!artifacts.empty()) j["artifacts"] = artifacts;
    j["wall_ms"] = wall_ms;
    return j;
  }
};

}  // namespace qheis
