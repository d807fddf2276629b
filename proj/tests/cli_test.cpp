#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

#ifndef PIEZOBEAM_BIN
#error "PIEZOBEAM_BIN must point at the command-line binary"
#endif

const char* kBin = PIEZOBEAM_BIN;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "piezobeam_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << text;
  return p.string();
}

int run_cli(const std::string& args, const std::string& log_name) {
  const fs::path log = scratch_dir() / log_name;
  const std::string cmd =
      std::string(kBin) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string read_log(const std::string& log_name) {
  std::ifstream in(scratch_dir() / log_name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kLinearConfig =
    "[domain]\nN = 32\n"
    "[physics]\ngamma = 0.3\nlambda1 = 0.5\nlambda2 = 0.5\n"
    "[initial]\nv0 = sine 1\n"
    "[time]\nt_end = 0.2\n";

const char* kBlowupConfig =
    "[domain]\nN = 32\n"
    "[source]\nkind = power_difference\na = 5\neta = 6\n"
    "[initial]\nv0 = sine 2\n"
    "[time]\nt_end = 2.0\n";

// eta = 4 gives negative energy yet no admissible certificate exponent.
const char* kQuarticConfig =
    "[domain]\nN = 32\n"
    "[source]\nkind = power_difference\na = 2\neta = 4\n"
    "[initial]\nv0 = sine 2\n"
    "[time]\nt_end = 0.5\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help", "help.log") == 0);
  CHECK(read_log("help.log").find("simulate") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run_cli("frobnicate", "usage.log") == 1);
  CHECK(run_cli("simulate", "noconfig.log") == 1);
  CHECK(run_cli("simulate --config /nonexistent/path.cfg", "missing.log") == 1);
}

TEST_CASE("invalid physics exits with 1 and names the violation") {
  const std::string cfg = write_file("bad.cfg", "[physics]\ngamma = 1.1\n");
  CHECK(run_cli("simulate --config " + cfg, "bad.log") == 1);
  CHECK(read_log("bad.log").find("alpha1") != std::string::npos);
}

TEST_CASE("simulate writes its outputs and exits 0") {
  const std::string cfg = write_file("linear.cfg", kLinearConfig);
  const fs::path out = scratch_dir() / "linear_out";
  fs::remove_all(out);
  CHECK(run_cli("simulate --config " + cfg + " --out " + out.string(),
                "simulate.log") == 0);
  CHECK(fs::exists(out / "series.csv"));
  CHECK(fs::exists(out / "report.txt"));
}

TEST_CASE("simulate treats a detected blow-up as success") {
  const std::string cfg = write_file("blowup.cfg", kBlowupConfig);
  const fs::path out = scratch_dir() / "blowup_out";
  fs::remove_all(out);
  CHECK(run_cli("simulate --config " + cfg + " --out " + out.string(),
                "blowup.log") == 0);
  std::ifstream report(out / "report.txt");
  std::ostringstream ss;
  ss << report.rdbuf();
  CHECK(ss.str().find("threshold_exceeded") != std::string::npos);
}

TEST_CASE("certify succeeds on the blow-up scenario") {
  const std::string cfg = write_file("certify.cfg", kBlowupConfig);
  const fs::path out = scratch_dir() / "certify_out";
  fs::remove_all(out);
  CHECK(run_cli("certify --config " + cfg + " --out " + out.string(),
                "certify.log") == 0);
  std::ifstream report(out / "report.txt");
  std::ostringstream ss;
  ss << report.rdbuf();
  CHECK(ss.str().find("t_m") != std::string::npos);
}

TEST_CASE("certify exits 3 when no certificate assembles") {
  const std::string cfg = write_file("quartic.cfg", kQuarticConfig);
  const fs::path out = scratch_dir() / "quartic_out";
  fs::remove_all(out);
  CHECK(run_cli("certify --config " + cfg + " --out " + out.string(),
                "quartic.log") == 3);
  CHECK(read_log("quartic.log").find("k_positive") != std::string::npos);
}

TEST_CASE("lowerbound runs standalone and with a simulation") {
  const std::string cfg = write_file("lb.cfg", kBlowupConfig);
  const fs::path out = scratch_dir() / "lb_out";
  fs::remove_all(out);
  CHECK(run_cli("lowerbound --config " + cfg + " --out " + out.string(),
                "lb.log") == 0);
  CHECK(run_cli("lowerbound --config " + cfg + " --out " + out.string() +
                    " --simulate",
                "lb_sim.log") == 0);
  std::ifstream report(out / "report.txt");
  std::ostringstream ss;
  ss << report.rdbuf();
  CHECK(ss.str().find("T_star") != std::string::npos);
}

}  // TEST_SUITE
