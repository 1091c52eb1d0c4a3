#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "memsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = memsim::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("memsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_path(const std::string& name) {
  return (fs::path(MEMSIM_CONFIG_DIR) / name).string();
}

std::size_t file_count(const fs::path& dir) {
  return static_cast<std::size_t>(
      std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

}  // namespace

TEST(Cli, ListModels) {
  const auto r = run_cli({"list-models"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::vector<std::string> names;
  for (std::string line; std::getline(lines, line);) names.push_back(line.substr(0, line.find(' ')));
  EXPECT_EQ(names,
            (std::vector<std::string>{"linear_drift", "nonlinear_drift", "simmons", "team", "vteam"}));
}

TEST(Cli, SimulateTeamWritesDeclaredOutputs) {
  const fs::path dir = fresh_dir("team");
  const auto r = run_cli({"simulate", "--config", config_path("team.cfg"), "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"team.csv", "team_timeseries.svg", "team_vi.svg"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  std::ifstream csv(dir / "team.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,v,i,x,r");
}

TEST(Cli, MissingConfigIsValidationError) {
  const auto r = run_cli({"simulate", "--config", "/nonexistent/none.cfg"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("none.cfg"), std::string::npos);
  EXPECT_EQ(run_cli({"simulate"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST(Cli, InvalidConfigWritesNothing) {
  const fs::path dir = fresh_dir("invalid");
  std::ifstream in(config_path("vteam.cfg"));
  std::stringstream text;
  text << in.rdbuf();
  std::string broken = text.str();
  broken.replace(broken.find("r_off = 1000"), 12, "r_off = 10");
  const fs::path cfg = dir / "broken.cfg";
  std::ofstream(cfg) << broken;
  const fs::path out = dir / "out";
  fs::create_directories(out);
  const auto r = run_cli({"simulate", "--config", cfg.string(), "--out-dir", out.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("r_on"), std::string::npos);
  EXPECT_EQ(file_count(out), 0u);
}

TEST(Cli, RuntimeFailureWritesNothing) {
  const fs::path dir = fresh_dir("runtime");
  const fs::path cfg = dir / "short.cfg";
  // Without clamping the state runs out of bounds mid-simulation.
  std::ofstream(cfg) << "[model]\ntype = vteam\nk_off = 1e-6\nk_on = -1e-6\n"
                        "[waveform]\nkind = sine\namplitude = 1\nfrequency = 1\n"
                        "[sim]\nt_end = 2\ndt = 1e-3\nclamp_policy = reflect_none\n"
                        "[outputs]\ncsv = a.csv\nsvg_vi = a.svg\n";
  const fs::path out = dir / "out";
  fs::create_directories(out);
  const auto r = run_cli({"simulate", "--config", cfg.string(), "--out-dir", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("step "), std::string::npos);
  EXPECT_EQ(file_count(out), 0u);
}

TEST(Cli, CompareWritesOverlay) {
  const fs::path dir = fresh_dir("compare");
  const auto r = run_cli(
      {"compare", "--config", config_path("compare_team_vteam.cfg"), "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "compare_vi.svg"));
}

TEST(Cli, FitWritesReportAndOverlay) {
  const fs::path dir = fresh_dir("fit");
  const auto r = run_cli(
      {"fit", "--config", config_path("fit_vteam_linear_drift.cfg"), "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fit_overlay.svg"));
  std::ifstream report(dir / "fit_report.txt");
  std::string first;
  std::getline(report, first);
  ASSERT_EQ(first.rfind("objective_value = ", 0), 0u);
  EXPECT_LT(std::stod(first.substr(18)), 0.05);
}

TEST(Cli, FitRequiresFitSection) {
  const auto r = run_cli({"fit", "--config", config_path("vteam.cfg"), "--out-dir",
                          fresh_dir("nofit").string()});
  EXPECT_EQ(r.code, 1);
}
