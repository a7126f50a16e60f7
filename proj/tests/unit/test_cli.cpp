#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hhl_lab/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("hhl_lab_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto dir = scratch_dir();
  const auto out = dir / ("out" + std::to_string(counter) + ".txt");
  const auto err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(HHL_LAB_CLI_PATH) + "' " + args + " >'" +
                          out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST(Cli, AmplitudesSucceedsAndIsDeterministic) {
  const auto a = run("amplitudes --kappa 4 --nt 6");
  const auto b = run("amplitudes --kappa 4 --nt 6", "HHL_LAB_THREADS=1");
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("schema_version=1"), std::string::npos);
  EXPECT_NE(a.out.find("k,delta,alpha_abs,bound"), std::string::npos);
}

TEST(Cli, JsonCarriesSchemaVersion) {
  const auto r = run("amplitudes --kappa 4 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("T"), 9);
  EXPECT_EQ(j.at("tables").size(), 3u);
}

TEST(Cli, CsvNumbersRoundTrip) {
  const auto r = run("simulate --n 1 --nt 6 --kappa 4");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find("# t0=");
  ASSERT_NE(pos, std::string::npos);
  const double t0 = std::stod(r.out.substr(pos + 5));
  EXPECT_EQ(t0, 0.5 * 2.0 * 3.14159265358979323846 * 64.0);
}

TEST(Cli, SimulateTracksClassicalSolution) {
  const auto r = run("simulate --n 2 --nt 8 --kappa 4 --seed 3 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j.at("summary").at("distance").get<double>(), 0.05);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("amplitudes --gamma 2").code, 2);
  EXPECT_EQ(run("amplitudes --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("simulate --spectrum 0.1,abc").code, 2);
  EXPECT_EQ(run("simulate --nt 3 --kappa 40").code, 2);
}

TEST(Cli, ConfigFileFlagsWin) {
  const auto cfg = scratch_dir() / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"({"kappa": 8, "nt": 7, "gamma": 0.25})";
  }
  const auto from_file = run("amplitudes --format json --config '" + cfg.string() + "'");
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  const auto j = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(j.at("config").at("kappa"), 8.0);
  EXPECT_EQ(j.at("config").at("gamma"), 0.25);

  const auto flag = run("amplitudes --format json --kappa 2 --config '" + cfg.string() + "'");
  ASSERT_EQ(flag.code, 0) << flag.err;
  EXPECT_EQ(nlohmann::json::parse(flag.out).at("config").at("kappa"), 2.0);

  const auto bad = scratch_dir() / "bad.json";
  {
    std::ofstream out(bad);
    out << R"({"kapa": 8})";
  }
  EXPECT_EQ(run("amplitudes --config '" + bad.string() + "'").code, 2);
  EXPECT_EQ(run("amplitudes --config /nonexistent/cfg.json").code, 2);
}

TEST(Cli, OutputFile) {
  const auto path = scratch_dir() / "table.csv";
  const auto r = run("amplitudes --kappa 4 --out '" + path.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), run("amplitudes --kappa 4").out);
}

TEST(Cli, VerifyPassesAndTamperFails) {
  const auto ok = run("verify");
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("[PASS] lipschitz"), std::string::npos);
  const auto bad = run("verify --inject-f-scale 1.1");
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("[FAIL] filter_normalization"), std::string::npos);
}

TEST(Cli, ErrorSweepReportsSlopes) {
  const auto r = run("error-sweep --n 1 --kappa 4 --sweep 6,7,8");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n_t,T,t0,err_full"), std::string::npos);
  EXPECT_NE(r.out.find("slope"), std::string::npos);
}

TEST(Cli, ExitCodeMapping) {
  using hhl_lab::ErrorKind;
  EXPECT_EQ(hhl_lab::exit_code_for(ErrorKind::ZeroProbability), 4);
  EXPECT_EQ(hhl_lab::exit_code_for(ErrorKind::BoundViolation), 3);
  EXPECT_EQ(hhl_lab::exit_code_for(ErrorKind::FormulaMismatch), 3);
  EXPECT_EQ(hhl_lab::exit_code_for(ErrorKind::ConfigError), 2);
  EXPECT_EQ(hhl_lab::exit_code_for(ErrorKind::InsufficientClockRegister), 2);
}
