// Exercises the installed command-line interface end to end: exit codes,
// report files, and operator exports.  Invoked by ctest with the binary path
// as argv[1].
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

namespace fs = std::filesystem;

int g_failures = 0;

int run(const std::string& args) {
  const int status = std::system(args.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect_exit(const std::string& cli, const std::string& args,
                 int expected) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  const int got = run(cmd);
  if (got != expected) {
    std::cerr << "FAIL: `ncval " << args << "` exited " << got
              << ", expected " << expected << "\n";
    ++g_failures;
  }
}

void expect_file(const fs::path& path) {
  if (!fs::exists(path)) {
    std::cerr << "FAIL: expected file " << path << " to exist\n";
    ++g_failures;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_check <path-to-ncval>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = fs::temp_directory_path() / "ncval_cli_check";
  fs::remove_all(work);
  fs::create_directories(work);

  expect_exit(cli, "describe", 0);
  expect_exit(cli, "describe ccr", 0);
  expect_exit(cli, "describe bogus", 2);
  expect_exit(cli, "--help", 0);
  expect_exit(cli, "bogus-suite --out " + work.string(), 2);
  expect_exit(cli, "ccr --trials 0", 2);
  expect_exit(cli, "ccr --dims 1 --trials 2", 2);
  expect_exit(cli, "ccr --tol bogus=1", 2);
  expect_exit(cli, "ccr --tol tol_ccr", 2);

  expect_exit(cli,
              "degeneracy --dims 4 --trials 3 --out " + work.string(), 0);
  expect_file(work / "report_degeneracy.json");

  // Unreachable tolerance: honest invariant failure, not a usage error.
  expect_exit(cli,
              "ccr --dims 4 --trials 3 --tol tol_ccr=1e-18 --out " +
                  work.string(),
              1);
  expect_file(work / "report_ccr.json");

  expect_exit(cli, "build-oscillator --levels 6 --out " + work.string(), 0);
  expect_file(work / "oscillator_lowering.json");
  expect_file(work / "oscillator_position.json");
  expect_file(work / "oscillator_momentum.json");
  expect_file(work / "oscillator_hamiltonian.json");
  expect_exit(cli, "build-oscillator --levels 2", 2);

  const fs::path config = work / "config.json";
  {
    std::ofstream out(config);
    out << R"({"dims":[4],"trials":3,"seed":11,"output_dir":")"
        << work.string() << R"("})" << "\n";
  }
  expect_exit(cli, "degeneracy --config " + config.string(), 0);
  expect_exit(cli, "degeneracy --config " + (work / "missing.json").string(),
              2);

  if (g_failures == 0) {
    std::cout << "cli_check: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_check: " << g_failures << " failures\n";
  return 1;
}
