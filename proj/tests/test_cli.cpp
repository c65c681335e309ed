#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include "cli.hpp"

namespace qst {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qst");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("qst_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, FidelityTraceWithSidecar) {
  const auto csv = path("k5.csv");
  const auto r = invoke({"fidelity", "--graph", "kn", "--n", "5", "--shift-io", "10", "--io", "0,4", "--tmax", "10",
                         "--steps", "2000", "--out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(csv));
  ASSERT_EQ(rows.size(), 2002u);
  EXPECT_EQ(rows[0], "t,fidelity");
  EXPECT_EQ(rows[1].substr(0, rows[1].find(',')), "0.00000000000000000e+00");

  const auto meta = nlohmann::json::parse(slurp(csv + ".json"));
  EXPECT_EQ(meta["config"]["command"], "fidelity");
  EXPECT_EQ(meta["config"]["steps"], 2000);
  EXPECT_EQ(meta["version"], QST_VERSION);
  EXPECT_TRUE(meta.contains("wall_clock_seconds"));
}

TEST_F(Cli, SidecarReplaysTheSameRun) {
  const auto first = path("first.csv");
  ASSERT_EQ(invoke({"noise", "--graph", "kn", "--n", "5", "--shift-io", "10", "--t-eval", "0.4967294132898051",
                    "--sigma2", "0:1:3", "--samples", "200", "--seed", "9", "--mode", "edge", "--out", first})
                .code,
            0);
  // replay from the sidecar, redirected to a new output
  auto meta = nlohmann::json::parse(slurp(first + ".json"));
  const auto second = path("second.csv");
  meta["config"]["out"] = second;
  std::ofstream(path("replay.json")) << meta.dump();
  const auto r = invoke({"--config", path("replay.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(first), slurp(second));
  EXPECT_EQ(nlohmann::json::parse(slurp(second + ".json"))["config"], meta["config"]);
}

TEST_F(Cli, FlagsOverrideConfig) {
  std::ofstream(path("cfg.json")) << R"({"graph": "path", "n": 2, "tmax": 1.0, "steps": 4})";
  const auto r = invoke({"fidelity", "--config", path("cfg.json"), "--steps", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 10u);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"noise", "--graph", "knm", "--n", "5", "--compare", "--sigma2", "0:2:3",
                                      "--samples", "150"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "3"});
  const auto ra = invoke(a);
  const auto rb = invoke(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(lines(ra.out).size(), 7u);
}

TEST_F(Cli, PstAndTables) {
  const auto pst = invoke({"pst", "--graph", "path", "--n", "3", "--window", "0,3"});
  ASSERT_EQ(pst.code, 0) << pst.err;
  const auto row = lines(pst.out).at(1);
  EXPECT_NEAR(std::stod(row.substr(0, row.find(','))), std::numbers::pi / (2 * std::sqrt(2.0)), 1e-6);

  const auto table = invoke({"table", "chains", "--shifts", "10", "--sizes", "2"});
  ASSERT_EQ(table.code, 0) << table.err;
  const auto cells = lines(table.out);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0], "dE,n,l,tStar,fMax,isPst,gridPoints,windowCap");

  const auto verify = invoke({"verify", "--families", "kn", "--n", "4..5", "--random-times", "5"});
  ASSERT_EQ(verify.code, 0) << verify.err;
  EXPECT_EQ(lines(verify.out).at(0), "family,n,dE,quantity,paper_value,oracle_value,abs_error");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"fidelity", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"fidelity", "--n", "5"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"fidelity", "--graph", "kn", "--n", "5", "--io", "0,7"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"fidelity", "--graph", "kn", "--n", "five"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"noise", "--graph", "kn", "--n", "5", "--mode", "both", "--t-eval", "1"}).code, cli::kExitUsage);
  std::ofstream(path("bad.json")) << R"({"graph": "kn", "colour": 3})";
  EXPECT_EQ(invoke({"fidelity", "--config", path("bad.json")}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
}

TEST_F(Cli, ModuleErrorsExitOne) {
  const auto r = invoke({"noise", "--graph", "path", "--n", "5", "--compare"});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_NE(r.err.find("unsupported-graph"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"pst", "--graph", "kn", "--n", "4", "--window", "3,1"}).code, cli::kExitRuntime);
  EXPECT_EQ(invoke({"table", "theta", "--paths", "7", "--sizes", "3"}).code, cli::kExitRuntime);
}

TEST_F(Cli, BinaryExitStatus) {
  const std::string cmd = std::string(QST_CLI_PATH) + " fidelity --graph nope --n 3 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), cli::kExitUsage);
}

}  // namespace
}  // namespace qst
