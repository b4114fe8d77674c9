#include <doctest.h>

#include <filesystem>
#include <stdexcept>

#include "ncval/suites.hpp"

namespace {

ncval::SuiteConfig small_config() {
  ncval::SuiteConfig config;
  config.dims = {4};
  config.trials = 5;
  config.output_dir = (std::filesystem::temp_directory_path() /
                       "ncval_test_suites")
                          .string();
  std::filesystem::create_directories(config.output_dir);
  return config;
}

}  // namespace

TEST_CASE("suite registry") {
  const auto& names = ncval::suite_names();
  REQUIRE(names.size() == 7);
  CHECK(names[0] == "homomorphism");
  CHECK(names[1] == "jets");
  CHECK(names[2] == "dynamics");
  CHECK(names[3] == "ccr");
  CHECK(names[4] == "ehrenfest");
  CHECK(names[5] == "degeneracy");
  CHECK(names[6] == "tomography");
  for (const auto& name : names) {
    CHECK(!ncval::describe(name).empty());
  }
  CHECK(!ncval::describe("all").empty());
  CHECK_THROWS_AS(ncval::describe("bogus"), std::invalid_argument);
}

TEST_CASE("config validation") {
  ncval::SuiteConfig config;
  CHECK_NOTHROW(config.validate());

  config.dims = {};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.dims = {1};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.dims = {2};
  config.trials = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.trials = 5;
  config.hbar = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.hbar = 1.0;
  config.tolerances["tol_bogus"] = 1e-8;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.tolerances.clear();
  config.tolerances["tol_star"] = -1e-8;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("config json round trip") {
  ncval::SuiteConfig config;
  config.dims = {2, 5};
  config.trials = 17;
  config.seed = 99;
  config.omega = 2.5;
  config.tolerances["tol_star"] = 1e-7;
  config.output_dir = "/tmp/somewhere";

  const auto j = config.to_json();
  const auto back = ncval::SuiteConfig::from_json(j);
  CHECK(back.dims == config.dims);
  CHECK(back.trials == config.trials);
  CHECK(back.seed == config.seed);
  CHECK(back.omega == config.omega);
  CHECK(back.tolerances == config.tolerances);
  CHECK(back.output_dir == config.output_dir);
  CHECK(back.tolerance("tol_star", 1e-8) == doctest::Approx(1e-7));
  CHECK(back.tolerance("tol_jet", 1e-9) == doctest::Approx(1e-9));

  CHECK_THROWS_AS(
      ncval::SuiteConfig::from_json(nlohmann::json{{"trials", "many"}}),
      std::exception);
}

TEST_CASE("run_suite rejects unknown names") {
  CHECK_THROWS_AS(ncval::run_suite("bogus", small_config()),
                  std::invalid_argument);
}

TEST_CASE("small ccr suite passes and reports deterministically") {
  const auto config = small_config();
  const auto report = ncval::run_suite("ccr", config);
  CHECK(report.suite == "ccr");
  CHECK(report.pass);
  CHECK(report.failures.empty());
  CHECK(!report.metrics.empty());
  CHECK(report.metrics.count("uncertainty_product_min") == 1);

  const auto again = ncval::run_suite("ccr", config);
  CHECK(report.to_json().dump() == again.to_json().dump());
}

TEST_CASE("small degeneracy suite passes") {
  const auto report = ncval::run_suite("degeneracy", small_config());
  CHECK(report.pass);
  CHECK(report.metrics.count("variance_gap_error") == 1);
}

TEST_CASE("unreachable tolerance produces a structured failure") {
  auto config = small_config();
  config.tolerances["tol_ccr"] = 1e-18;
  const auto report = ncval::run_suite("ccr", config);
  CHECK(!report.pass);
  REQUIRE(!report.failures.empty());
  const auto& f = report.failures.front();
  CHECK(f.contains("check"));
  CHECK(f.contains("observed"));
  CHECK(f.contains("tolerance"));

  const auto j = report.to_json();
  CHECK(j["suite"] == "ccr");
  CHECK(j["pass"] == false);
  CHECK(j.contains("config"));
  CHECK(j.contains("metrics"));
  CHECK(j["failures"].size() == report.failures.size());
}
