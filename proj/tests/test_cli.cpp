// End-to-end checks of the command line tool: exit-code partitioning,
// deterministic outputs, and the damped trajectory path.  Each case spawns
// the real binary.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "linesol/scenario.hpp"

namespace fs = std::filesystem;
using linesol::scenario::Scenario;

namespace {

const std::string kCli = LINESOL_CLI_PATH;
const std::string kScenarioDir = LINESOL_SCENARIO_DIR;

fs::path work_dir(const std::string& label) {
  const fs::path dir = fs::temp_directory_path() / ("linesol_cli_" + label);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out, err;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd =
      kCli + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string shipped(const std::string& name) {
  return kScenarioDir + "/" + name + ".json";
}

// Writes a mutated copy of a shipped scenario and returns its path.
template <typename Mutate>
std::string derived_scenario(const fs::path& dir, const std::string& base,
                             Mutate mutate) {
  Scenario sc = linesol::scenario::load_file(shipped(base));
  mutate(sc);
  const fs::path path = dir / (sc.name + ".json");
  std::ofstream(path) << linesol::scenario::serialize(sc);
  return path.string();
}

}  // namespace

TEST_CASE("verify on a shipped scenario exits 0 and writes reports") {
  const auto dir = work_dir("verify_ok");
  const auto res = run_cli(
      "verify --scenario " + shipped("euler_gauss_g2") + " --out " +
          (dir / "out").string(),
      dir);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("verdict: PASS") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "residuals.csv"));
  CHECK(fs::exists(dir / "out" / "summary.txt"));
  const std::string csv = slurp(dir / "out" / "residuals.csv");
  CHECK(csv.rfind("mode,equation,norm,value\n", 0) == 0);
  CHECK(csv.find("analytic,mass,max_abs,0\n") != std::string::npos);
}

TEST_CASE("invalid scenarios exit 2") {
  const auto dir = work_dir("exit2");
  SUBCASE("missing file") {
    const auto res = run_cli("verify --scenario " + (dir / "nope.json").string(), dir);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("invalid scenario") != std::string::npos);
  }
  SUBCASE("usage error: --scenario omitted") {
    const auto res = run_cli("verify", dir);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("--scenario") != std::string::npos);
  }
  SUBCASE("non-positive entropy anchor") {
    const auto path = derived_scenario(dir, "euler_gauss_g2",
                                       [](Scenario& sc) { sc.spec.g0 = -1.0; });
    const auto res = run_cli("verify --scenario " + path, dir);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("g(z) > 0") != std::string::npos);
  }
  SUBCASE("mass needs one space dimension") {
    const auto res =
        run_cli("mass --scenario " + shipped("ep_repulse_nd"), dir);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("one space dimension") != std::string::npos);
  }
}

TEST_CASE("sign-indefinite density exits 3") {
  const auto dir = work_dir("exit3");
  const auto path =
      derived_scenario(dir, "euler_gauss_g2", [](Scenario& sc) {
        sc.spec.profile =
            linesol::profiles::Profile::polynomial({0.0, 1.0});  // f(z) = z
      });
  const auto res = run_cli("verify --scenario " + path, dir);
  CHECK(res.exit_code == 3);
  CHECK(res.err.find("precondition violated") != std::string::npos);
}

TEST_CASE("unstable Courant number exits 4") {
  const auto dir = work_dir("exit4");
  const auto path = derived_scenario(dir, "euler_gauss_g2",
                                     [](Scenario& sc) { sc.fv->cfl = 5.0; });
  const auto res = run_cli(
      "evolve --scenario " + path + " --out " + (dir / "out").string(), dir);
  CHECK(res.exit_code == 4);
  CHECK(res.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("a completed check that misses its tolerance exits 4") {
  const auto dir = work_dir("tol_fail");
  const auto res = run_cli(
      "verify --scenario " + shipped("euler_gauss_g2") + " --tol 1e-13 --out " +
          (dir / "out").string(),
      dir);
  CHECK(res.exit_code == 4);
  CHECK(res.out.find("verdict: FAIL") != std::string::npos);
}

TEST_CASE("identical scenario files produce byte-identical reports") {
  const auto dir = work_dir("deterministic");
  for (const std::string verb : {"verify", "entropy"}) {
    const auto a = run_cli(
        verb + " --scenario " + shipped("ep_gauged_poly") + " --out " +
            (dir / (verb + "_a")).string(),
        dir);
    const auto b = run_cli(
        verb + " --scenario " + shipped("ep_gauged_poly") + " --out " +
            (dir / (verb + "_b")).string(),
        dir);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
  }
  CHECK(slurp(dir / "verify_a" / "residuals.csv") ==
        slurp(dir / "verify_b" / "residuals.csv"));
  CHECK(slurp(dir / "verify_a" / "summary.txt") ==
        slurp(dir / "verify_b" / "summary.txt"));
  const std::string ea = slurp(dir / "entropy_a" / "entropy.csv");
  CHECK(ea == slurp(dir / "entropy_b" / "entropy.csv"));
  CHECK(!ea.empty());
}

TEST_CASE("entropy on the constant-profile fixture reports the linear factor") {
  const auto dir = work_dir("entropy_const");
  const auto res = run_cli(
      "entropy --scenario " + shipped("euler_const_fi") + " --out " +
          (dir / "out").string(),
      dir);
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(dir / "out" / "entropy.csv");
  // g = 5 - z crosses zero at z = 5, strictly inside the [-3, 6] window.
  CHECK(csv.rfind("# positivity_domain,-3,5\n", 0) == 0);
  CHECK(csv.find("\n-3,8,8,0\n") != std::string::npos);
}

TEST_CASE("trajectory command integrates linear damping") {
  const auto dir = work_dir("traj_damped");
  const auto path = derived_scenario(dir, "euler_gauss_g2", [](Scenario& sc) {
    sc.name = "traj_damped";
    sc.spec.xi = 0.0;
    sc.spec.a1 = {1.0};
    sc.trajectory.damping = {{1.0, 1.0}};
    sc.trajectory.t_hi = 2.0;
    sc.trajectory.n_samples = 21;
  });
  const auto res = run_cli(
      "trajectory --scenario " + path + " --out " + (dir / "out").string(),
      dir);
  CHECK(res.exit_code == 0);
  std::ifstream csv(dir / "out" / "trajectory.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,a_1,adot_1");
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    double t = 0.0, a = 0.0, v = 0.0;
    char comma = 0;
    row >> t >> comma >> a >> comma >> v;
    CHECK(std::abs(a - (1.0 - std::exp(-t))) <= 1e-8);
    CHECK(std::abs(v - std::exp(-t)) <= 1e-8);
  }
}

TEST_CASE("sublinear damping from rest exits 2") {
  const auto dir = work_dir("traj_rest");
  const auto path = derived_scenario(dir, "euler_gauss_g2", [](Scenario& sc) {
    sc.name = "traj_rest";
    sc.spec.xi = 0.0;
    sc.spec.a1 = {0.0};
    sc.trajectory.damping = {{1.0, 0.5}};
  });
  const auto res = run_cli("trajectory --scenario " + path, dir);
  CHECK(res.exit_code == 2);
}
