#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncval/io.hpp"
#include "ncval/models.hpp"
#include "ncval/suites.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 invariant failure, 2 usage/config error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for write");
  out << j.dump(2) << "\n";
}

ncval::SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  nlohmann::json j;
  in >> j;
  return ncval::SuiteConfig::from_json(j);
}

void apply_tolerance_flags(const std::vector<std::string>& flags,
                           ncval::SuiteConfig& cfg) {
  for (const std::string& flag : flags) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == flag.size()) {
      throw std::invalid_argument("bad --tol value '" + flag +
                                  "', expected name=value");
    }
    cfg.tolerances[flag.substr(0, eq)] = std::stod(flag.substr(eq + 1));
  }
}

int run_suites(const std::vector<std::string>& names,
               const ncval::SuiteConfig& cfg) {
  bool all_pass = true;
  for (const std::string& name : names) {
    const auto start = std::chrono::steady_clock::now();
    const ncval::SuiteReport report = ncval::run_suite(name, cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    const std::string path =
        (std::filesystem::path(cfg.output_dir) / ("report_" + name + ".json"))
            .string();
    write_json_file(report.to_json(), path);
    for (const nlohmann::json& failure : report.failures) {
      std::cout << "  FAIL " << failure.dump() << "\n";
    }
    std::printf("%s %s: %zu metrics, %zu failures (%.2fs) -> %s\n",
                report.pass ? "[PASS]" : "[FAIL]", name.c_str(),
                report.metrics.size(), report.failures.size(), elapsed,
                path.c_str());
    all_pass = all_pass && report.pass;
  }
  return all_pass ? kExitPass : kExitFail;
}

int build_oscillator_files(int levels, const ncval::SuiteConfig& cfg) {
  const ncval::OscillatorSystem sys =
      ncval::build_oscillator(levels, cfg.hbar, cfg.mass, cfg.omega);
  std::filesystem::create_directories(cfg.output_dir);
  const std::filesystem::path dir(cfg.output_dir);
  ncval::save_operator(sys.lowering, (dir / "oscillator_lowering.json"));
  ncval::save_operator(sys.position, (dir / "oscillator_position.json"));
  ncval::save_operator(sys.momentum, (dir / "oscillator_momentum.json"));
  ncval::save_operator(sys.hamiltonian,
                       (dir / "oscillator_hamiltonian.json"));
  std::cout << "wrote oscillator operators (levels=" << levels << ") to "
            << cfg.output_dir << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Noncommutative-value engine: jets of expectation functions, star "
      "products, dynamics pictures, and simulated tomography."};
  app.name("ncval");

  std::string command;
  app.add_option("command", command,
                 "Suite name, 'all', 'describe', or 'build-oscillator'")
      ->required();
  std::string target;
  app.add_option("target", target, "Suite name for 'describe'");
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  std::vector<int> dims;
  app.add_option("--dims", dims, "Hilbert-space dimensions")->delimiter(',');
  int trials = -1;
  app.add_option("--trials", trials, "Random trials per dimension");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master RNG seed");
  double hbar = 0, mass = 0, omega = 0;
  auto* hbar_opt = app.add_option("--hbar", hbar, "Planck constant");
  auto* mass_opt = app.add_option("--mass", mass, "Oscillator mass");
  auto* omega_opt = app.add_option("--omega", omega, "Oscillator frequency");
  std::vector<std::string> tol_flags;
  app.add_option("--tol", tol_flags, "Tolerance override name=value");
  std::string out_dir;
  app.add_option("--out", out_dir, "Output directory for reports");
  int levels = 16;
  app.add_option("--levels", levels, "Levels for build-oscillator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ncval::SuiteConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!dims.empty()) cfg.dims = dims;
    if (trials >= 0) cfg.trials = trials;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (hbar_opt->count() > 0) cfg.hbar = hbar;
    if (mass_opt->count() > 0) cfg.mass = mass;
    if (omega_opt->count() > 0) cfg.omega = omega;
    apply_tolerance_flags(tol_flags, cfg);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();

    if (command == "describe") {
      if (target.empty()) {
        for (const std::string& name : ncval::suite_names()) {
          std::cout << name << ": " << ncval::describe(name) << "\n\n";
        }
      } else {
        std::cout << ncval::describe(target) << "\n";
      }
      return kExitPass;
    }
    if (command == "build-oscillator") {
      return build_oscillator_files(levels, cfg);
    }
    if (command == "all") {
      return run_suites(ncval::suite_names(), cfg);
    }
    return run_suites({command}, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
