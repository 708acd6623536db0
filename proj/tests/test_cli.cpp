#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

std::string binary_path() {
  const char* env = std::getenv("TONGUELOCK_BIN");
  REQUIRE_MESSAGE(env != nullptr, "TONGUELOCK_BIN must point at the CLI binary");
  return env;
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tonguelock_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("rho on a rigid rotation prints a rigorous enclosure") {
  const RunResult r = run("rho --kind arnold --tau 0.333333333333 --alpha 0 --n 1000");
  CHECK(r.status == 0);
  CHECK(r.out.find("rigorous") != std::string::npos);
  double lo = 0.0, hi = 0.0;
  long n = 0;
  REQUIRE(std::sscanf(r.out.c_str(), "%lf %lf %ld", &lo, &hi, &n) == 3);
  CHECK(lo <= 0.333333333333);
  CHECK(hi >= 0.333333333333);
  CHECK(n == 1000);
}

TEST_CASE("classify exit codes: decision vs undecided") {
  const RunResult locked = run(
      "classify --kind arnold --tau 0 --alpha 0.5 "
      "--set budget.n_list=256 --set budget.grid_x=8 --set budget.grid_y=16 "
      "--set budget.strip_nodes=64 --set budget.strip_transient=256");
  CHECK(locked.status == 0);
  CHECK(locked.out.find("LOCKED") == 0);

  const RunResult unlocked = run(
      "classify --kind arnold --tau 0.3 --alpha 0 "
      "--set budget.n_list=256 --set budget.grid_x=8 --set budget.grid_y=8");
  CHECK(unlocked.status == 0);
  CHECK(unlocked.out.find("UNLOCKED_UP") == 0);

  const RunResult undecided = run(
      "classify --kind arnold --tau 0.13 --alpha 0.05 --beta 1 "
      "--set budget.n_list=16 --set budget.eps_list=0.001 "
      "--set budget.grid_x=4 --set budget.grid_y=4 "
      "--set budget.strip_nodes=16 --set budget.strip_transient=4 "
      "--set budget.radius_schedule=0.01 --set budget.delta_list=0.01");
  CHECK(undecided.status == 3);
  CHECK(undecided.out.find("UNDECIDED") == 0);
}

TEST_CASE("lyap prints bounds and the integral check") {
  const RunResult r = run(
      "lyap --kind arnold --tau 0 --alpha 0.5 --n 256 --grid-x 2 --grid-y 64 "
      "--check-integral --nodes 256");
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  double lower = 0.0, upper = 0.0, margin = 0.0;
  char rigor[32] = {0};
  REQUIRE(std::sscanf(first.c_str(), "%lf %lf %lf %31s", &lower, &upper, &margin,
                      rigor) == 4);
  CHECK(lower < 0.0);
  CHECK(upper > 0.0);
  CHECK(r.out.find("integral 1") != std::string::npos);
}

TEST_CASE("config file + flag precedence and parse errors") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "run.conf";
  std::ofstream(cfg) << "fiber.kind=arnold\nfiber.tau=0.1\nfiber.alpha=0\n";
  const RunResult r =
      run("rho --config " + cfg.string() + " --tau 0.25 --n 100 --grid-x 2 --grid-y 2");
  CHECK(r.status == 0);
  double lo = 0.0;
  REQUIRE(std::sscanf(r.out.c_str(), "%lf", &lo) == 1);
  CHECK(lo == doctest::Approx(0.25).epsilon(1e-6));  // flag wins over file

  std::ofstream(cfg) << "fiber.kind=arnold\nfiber.typo=3\n";
  const RunResult bad = run("rho --config " + cfg.string());
  CHECK(bad.status == 1);
  CHECK(bad.out.find("fiber.typo") != std::string::npos);
  CHECK(bad.out.find("line 2") != std::string::npos);

  const RunResult range = run("rho --kind arnold --alpha 1.5");
  CHECK(range.status == 1);
  CHECK(range.out.find("fiber.alpha") != std::string::npos);
}

TEST_CASE("scan writes byte-identical exports for 1 and N workers") {
  TempDir tmp;
  const std::string common =
      "scan --kind arnold --beta 0 --pgm "
      "--set scan.tau_count=8 --set scan.alpha_count=2 "
      "--set scan.alpha_lo=0.5 --set scan.alpha_hi=0.6 --set scan.rho_n=512 "
      "--set budget.n_list=256 --set budget.eps_list=0.02 "
      "--set budget.grid_x=4 --set budget.grid_y=16 "
      "--set budget.strip_nodes=64 --set budget.strip_transient=128 ";
  const std::string out1 = (tmp.path / "w1").string();
  const std::string outN = (tmp.path / "wN").string();
  const RunResult r1 = run(common + "--workers 1 --out " + out1);
  REQUIRE_MESSAGE(r1.status == 0, r1.out);
  const RunResult rN = run(common + "--workers 4 --out " + outN);
  REQUIRE_MESSAGE(rN.status == 0, rN.out);
  CHECK(slurp(out1 + ".csv") == slurp(outN + ".csv"));
  CHECK(slurp(out1 + ".json") == slurp(outN + ".json"));
  CHECK(slurp(out1 + ".pgm") == slurp(outN + ".pgm"));
  CHECK(slurp(out1 + ".csv").rfind("tau,alpha,class,rho_est\n", 0) == 0);
  CHECK(slurp(out1 + ".pgm").rfind("P2\n8 2\n3\n", 0) == 0);
}

TEST_CASE("probe-lock reports success on an already locking family") {
  const RunResult r = run(
      "probe-lock --kind arnold --tau 0 --alpha 0.5 --beta 0.1 "
      "--set probe.trials=2 "
      "--set budget.n_list=256 --set budget.grid_x=8 --set budget.grid_y=16 "
      "--set budget.strip_nodes=128 --set budget.strip_transient=512");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"found\": true") != std::string::npos);
  CHECK(r.out.find("\"success_trial\": 0") != std::string::npos);
}

TEST_CASE("probe-lock exit 4 when nothing locks") {
  const RunResult r = run(
      "probe-lock --kind arnold --tau 0.3 --alpha 0.3 --beta 0.05 "
      "--set probe.trials=2 --set probe.radius=0.01 "
      "--set budget.n_list=256 --set budget.grid_x=8 --set budget.grid_y=16 "
      "--set budget.strip_nodes=64 --set budget.strip_transient=128");
  CHECK(r.status == 4);
  CHECK(r.out.find("\"found\": false") != std::string::npos);
}

TEST_CASE("probe-exponent runs a monotone descent") {
  const RunResult r = run(
      "probe-exponent --kind arnold --tau 0.3 --alpha 0.02 --beta 0.05 "
      "--set probe.iterations=4 --set probe.radius=0.05 --set probe.n=128 "
      "--set probe.grid_x=8 --set probe.grid_y=16 "
      "--set budget.n_list=64,128 --set budget.eps_list=0.05,0.02 "
      "--set budget.grid_x=64 --set budget.grid_y=16 "
      "--set budget.strip_nodes=64 --set budget.strip_transient=128");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"final_class\": \"UNLOCKED") != std::string::npos);
}

TEST_CASE("unknown subcommand fails with usage") {
  const RunResult r = run("frobnicate");
  CHECK(r.status != 0);
}

TEST_SUITE_END();
