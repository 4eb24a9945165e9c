// End-to-end checks of the command-line driver: exit codes, CSV headers,
// and byte-identical reruns.  The binary path is injected by the build.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#ifndef BENCH_CLI_PATH
#error "BENCH_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BENCH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tuckercross_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("missing subcommand and bad flags are usage errors") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("no-such-subcommand") == 2);
  CHECK(run_cli("cross-compare --no-such-flag") == 2);
}

TEST_CASE("config errors exit with code 2") {
  const fs::path dir = fresh_dir("config_errors");
  CHECK(run_cli("cross-compare --out-dir " + dir.string() + " --override target=f9") == 2);
  CHECK(run_cli("cross-compare --out-dir " + dir.string() + " --override rank_min=0") == 2);
  CHECK(run_cli("cross-compare --out-dir " + dir.string() + " --override mistyped_key=1") == 2);
  CHECK(run_cli("fokker-planck --out-dir " + dir.string() + " --override dt=0") == 2);
  CHECK(run_cli("fokker-planck --out-dir " + dir.string() +
                " --override adaptive=true --override eps_l=1e-3 --override eps_u=1e-6") == 2);
  CHECK(run_cli("advection --out-dir " + dir.string() + " --override n=61") == 2);
  CHECK(run_cli("fom --out-dir " + dir.string() +
                " --override model=advection --override n=45") == 2);
  CHECK(run_cli("cross-compare --config /nonexistent/config.txt --out-dir " + dir.string()) == 2);
}

TEST_CASE("cross-compare emits the documented schema and is deterministic") {
  const fs::path a = fresh_dir("cc_a");
  const fs::path b = fresh_dir("cc_b");
  const std::string common =
      " --seed 3 --override n=25 --override rank_max=5 --override num_seeds=2";
  REQUIRE(run_cli("cross-compare --out-dir " + a.string() + common) == 0);
  REQUIRE(run_cli("cross-compare --out-dir " + b.string() + common) == 0);
  CHECK(first_line(a / "cross_compare.csv") == "rank,method,seed,abs_error,entries_touched");
  CHECK(slurp(a / "cross_compare.csv") == slurp(b / "cross_compare.csv"));
  CHECK(fs::exists(a / "cross_compare.meta.txt"));
}

TEST_CASE("config file plus overrides resolve with override precedence") {
  const fs::path dir = fresh_dir("cc_config");
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "# comment\n";
    out << "n = 25\n";
    out << "rank_max = 9\n";
  }
  REQUIRE(run_cli("cross-compare --out-dir " + dir.string() + " --config " + cfg.string() +
                  " --override rank_max=4") == 0);
  const std::string meta = slurp(dir / "cross_compare.meta.txt");
  CHECK(meta.find("rank_max = 4") != std::string::npos);
  CHECK(meta.find("n = 25") != std::string::npos);
}

TEST_CASE("time-series runs emit the documented schema") {
  const fs::path dir = fresh_dir("fp");
  REQUIRE(run_cli("fokker-planck --out-dir " + dir.string() +
                  " --override n=11 --override t_end=0.02 --override dt=0.01 --override r=3"
                  " --override r_f=3 --override probe_every=1") == 0);
  CHECK(first_line(dir / "fokker_planck.csv") ==
        "t,rel_error,rF_1,rF_2,rF_3,rF_4,sv_1,sv_2,sv_3,entries_touched");
  CHECK(first_line(dir / "fokker_planck_moments.csv") == "quantity,i,j,computed,analytic");

  const fs::path adir = fresh_dir("adv");
  REQUIRE(run_cli("advection --out-dir " + adir.string() +
                  " --override n=11 --override t_end=0.02 --override dt=0.01 --override r=3"
                  " --override probe_every=1 --override marginal_times=0.02") == 0);
  CHECK(first_line(adir / "advection.csv") ==
        "t,rel_error,rF_1,rF_2,rF_3,rF_4,sv_1,sv_2,sv_3,entries_touched");
  CHECK(first_line(adir / "marginal_t0.02.csv") == "x3,x4,value");
}

TEST_CASE("zero-horizon run reports initial diagnostics only") {
  const fs::path dir = fresh_dir("fp0");
  REQUIRE(run_cli("fokker-planck --out-dir " + dir.string() +
                  " --override n=11 --override t_end=0 --override r=3 --override r_f=3") == 0);
  std::ifstream in(dir / "fokker_planck.csv");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);  // header + t=0
}

TEST_CASE("dense reference run writes a trajectory and summary") {
  const fs::path dir = fresh_dir("fom");
  REQUIRE(run_cli("fom --out-dir " + dir.string() +
                  " --override model=decay --override t_end=0.2 --override dt=0.05"
                  " --override probe_every=2") == 0);
  CHECK(first_line(dir / "fom_summary.csv") == "t,frobenius_norm");
  CHECK(fs::file_size(dir / "fom_trajectory.bin") > 0);
}
