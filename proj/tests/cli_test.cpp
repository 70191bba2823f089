#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "resonance/cli.hpp"

namespace fs = std::filesystem;
using resonance::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("resonance_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("spectral.json", R"({"type":"spectral","energies":[1,1.5,2.2],"overlaps":[0.6,0.6,0.52915026221291817]})");
    write("explicit.json", R"({"type":"explicit","n":2,"h_s":[[3,0.2,0,0],[0.2,4,0,0],[0,0,5,0.1],[0,0,0.1,6]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  const auto r = call({"simulate", "--spec", path("spectral.json"), "--t", "1", "--bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
}

TEST_F(CliTest, SimulateAtTimeZero) {
  const auto r = call({"simulate", "--spec", path("spectral.json"), "--t", "0", "--out-dir", path("sim")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("success_prob=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("probe_decay_prob=0\n"), std::string::npos);
  EXPECT_EQ(slurp(path("sim") + "/simulate.csv").substr(0, 40), "t,success_prob,probe_decay_prob,leakage\n");
}

TEST_F(CliTest, SimulateFullWithSamplingAndTrotter) {
  const std::vector<std::string> base{"--seed", "5", "simulate", "--spec", path("explicit.json"), "--t", "30",
                                      "--epsilon0", "-2", "--c", "0.02", "--representation", "full"};
  auto args = base;
  args.insert(args.end(), {"--shots", "1000"});
  const auto a = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("count0="), std::string::npos);
  EXPECT_EQ(a.out, call(args).out);
  auto trot = base;
  trot.insert(trot.end(), {"--trotter-steps", "200"});
  EXPECT_EQ(call(trot).code, 0);
}

TEST_F(CliTest, ValidationFailuresExitOne) {
  EXPECT_EQ(call({"simulate", "--spec", path("missing.json"), "--t", "1"}).code, 1);
  write("bad.json", R"({"type":"spectral","energies":[1,2],"overlaps":[0.5,0.5]})");
  EXPECT_EQ(call({"simulate", "--spec", path("bad.json"), "--t", "1"}).code, 1);
  EXPECT_EQ(call({"simulate", "--spec", path("spectral.json"), "--t", "-1"}).code, 1);
  EXPECT_EQ(call({"simulate", "--spec", path("spectral.json"), "--t", "1", "--omega", "0"}).code, 1);
  const auto r = call({"simulate", "--spec", path("spectral.json"), "--t", "1", "--representation", "full"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(call({"simulate", "--spec", path("spectral.json"), "--t", "1", "--trotter-steps", "4"}).code, 1);
  EXPECT_EQ(call({"figure", "--id", "9", "--out-dir", path("f")}).code, 1);
}

TEST_F(CliTest, ConfigLimitsApply) {
  const auto cfg = write("limits.json", R"({"max_dim":8})");
  EXPECT_EQ(call({"simulate", "--spec", path("explicit.json"), "--t", "1", "--representation", "full"}).code, 0);
  EXPECT_EQ(call({"--config", cfg, "simulate", "--spec", path("explicit.json"), "--t", "1", "--representation",
                  "full"})
                .code,
            1);
}

TEST_F(CliTest, NumericFailureExitsTwo) {
  write("huge.json", R"({"type":"spectral","energies":[1e300,2],"overlaps":[0.6,0.8]})");
  const auto r = call({"simulate", "--spec", path("huge.json"), "--t", "1e10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("numeric"), std::string::npos);
}

TEST_F(CliTest, ScanWritesFilesAndIsThreadIndependent) {
  const std::vector<std::string> common{"scan", "--spec", path("spectral.json"), "--omega-ini", "0.5", "--omega-fin",
                                        "2.5", "--q", "80", "--c", "0.02", "--shots", "2000"};
  auto one = std::vector<std::string>{"--threads", "1", "--seed", "9"};
  one.insert(one.end(), common.begin(), common.end());
  one.insert(one.end(), {"--out-dir", path("s1")});
  auto many = std::vector<std::string>{"--threads", "3", "--seed", "9"};
  many.insert(many.end(), common.begin(), common.end());
  many.insert(many.end(), {"--out-dir", path("s3")});
  const auto a = call(one);
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(call(many).code, 0);
  EXPECT_EQ(slurp(path("s1") + "/scan.csv"), slurp(path("s3") + "/scan.csv"));
  EXPECT_EQ(slurp(path("s1") + "/peaks.csv"), slurp(path("s3") + "/peaks.csv"));
  EXPECT_NE(a.out.find("peaks=3"), std::string::npos) << a.out;
  EXPECT_FALSE(fs::exists(path("s1") + "/scan.csv.tmp"));
}

TEST_F(CliTest, Table1WritesCsv) {
  const auto r = call({"table1", "--out-dir", path("t")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(path("t") + "/table1.csv");
  EXPECT_EQ(text, r.out);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST_F(CliTest, FigureAllWritesEveryDataset) {
  ASSERT_EQ(call({"--threads", "2", "figure", "--id", "all", "--out-dir", path("figs")}).code, 0);
  for (const char* name : {"fig2a.csv", "fig2b.csv", "fig3.csv", "fig4.csv", "fig4_d0.01.csv", "fig5.csv"}) {
    EXPECT_TRUE(fs::exists(path("figs") + "/" + name)) << name;
  }
  ASSERT_EQ(call({"figure", "--id", "3", "--out-dir", path("fig3")}).code, 0);
  EXPECT_EQ(slurp(path("figs") + "/fig3.csv"), slurp(path("fig3") + "/fig3.csv"));
}

TEST_F(CliTest, TrotterCheckReportsSlope) {
  const auto r = call({"trotter-check", "--spec", path("explicit.json"), "--epsilon0", "-2", "--c", "0.05", "--t",
                       "1", "--m-list", "8,16,32,64", "--out-dir", path("tr")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find("slope=");
  ASSERT_NE(pos, std::string::npos);
  const double slope = std::stod(r.out.substr(pos + 6));
  EXPECT_GT(slope, -1.3);
  EXPECT_LT(slope, -0.7);
  EXPECT_TRUE(fs::exists(path("tr") + "/trotter.csv"));
  EXPECT_EQ(call({"trotter-check", "--spec", path("spectral.json")}).code, 1);
}

TEST_F(CliTest, ValidateClosedForm) {
  const auto r = call({"validate-eq5", "--out-dir", path("v")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.out.find("max_abs_diff=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LT(std::stod(r.out.substr(pos + 13)), 1e-6);
  EXPECT_TRUE(fs::exists(path("v") + "/eq5_report.csv"));
}
