#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncval {

// Configuration shared by all experiment suites.  Tolerance names accepted
// in `tolerances` override the named defaults (values must be positive):
//   tol_star, tol_jet, tol_fd, tol_dyn, tol_trunc, tol_ccr, tol_spec.
struct SuiteConfig {
  std::vector<int> dims = {2, 3, 4, 8, 16};
  int trials = 1000;
  std::uint64_t seed = 20240817;
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  std::map<std::string, double> tolerances;
  std::string output_dir = ".";

  double tolerance(const std::string& name, double fallback) const;
  void validate() const;  // throws std::invalid_argument on bad values

  static SuiteConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Outcome of one suite: named scalar metrics plus one entry per failed
// check, with enough detail to reproduce (check name, observed value,
// tolerance, context).  Reports serialize deterministically: identical
// config and seed give byte-identical JSON.
struct SuiteReport {
  std::string suite;
  bool pass = true;
  SuiteConfig config;
  std::map<std::string, double> metrics;
  std::vector<nlohmann::json> failures;

  nlohmann::json to_json() const;
};

// Registered suite names, in canonical order (excluding "all").
const std::vector<std::string>& suite_names();

// Run one suite.  Throws std::invalid_argument for unknown names or invalid
// configs; file-system problems with output_dir surface as
// std::runtime_error.  Side artifacts (CSV traces, sampled records) land in
// config.output_dir.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

// One-paragraph description of a suite (or "all"); throws on unknown names.
std::string describe(const std::string& name);

}  // namespace ncval
