#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using scatseq::cli::dispatch;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("scatseq-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(std::vector<std::string> args, bool with_dir = true) {
    if (with_dir) {
      args.push_back("--results-dir");
      args.push_back(dir_.string());
    }
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_F(Cli, CheckReportsAExponent) {
  const auto r = run({"check", "--p", "2", "--h", "2", "--n", "12", "--I", "1", "--J", "3", "--alpha", "g^1",
                      "--beta", "g^2", "--gamma", "g^3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["criteria"]["a_exponent"], "273");
  EXPECT_EQ(j["result"]["order"], "16777215");
  EXPECT_EQ(j["result"]["q3k_minus_1"], "4095");
}

TEST_F(Cli, CheckMatchesGoldenFile) {
  const auto r = run({"check", "--p", "2", "--h", "2", "--n", "12", "--I", "1", "--J", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, read(fs::path(SCATSEQ_GOLDEN_DIR) / "check_q4_n12.json"));
}

TEST_F(Cli, ScatteredExitZero) {
  const auto r = run({"verify", "scattered", "--p", "2", "--h", "1", "--n", "3", "--I", "1", "--J", "2", "--alpha",
                      "2", "--beta", "3", "--gamma", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["report"]["verdict"], true);
}

TEST_F(Cli, RefutationExitsOneWithWitness) {
  const auto r = run({"verify", "evasive2", "--n", "3", "--alpha", "2", "--beta", "3", "--gamma", "4", "--bound", "2"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["result"]["report"]["witness"].is_null());
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"check", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"check", "--n", "3", "--alpha", "9"}).code, 2);
  EXPECT_EQ(run({"check", "--n", "3", "--alpha", "g^x"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  const auto budget = run({"verify", "scattered", "--n", "6", "--alpha", "3", "--budget", "100"});
  EXPECT_EQ(budget.code, 2);
  EXPECT_NE(budget.err.find("budget"), std::string::npos);
}

TEST_F(Cli, GeneratorExponentSyntax) {
  const auto a = run({"check", "--n", "3", "--alpha", "g^3"});
  const auto f = run({"field-info", "--n", "3"});
  ASSERT_EQ(a.code, 0);
  // generator of F_8 is 2 = x, and x^3 = x^2 + 1 = 5 under x^3 + x^2 + 1
  EXPECT_EQ(nlohmann::json::parse(f.out)["result"]["generator"], 2);
  EXPECT_EQ(nlohmann::json::parse(a.out)["result"]["params"]["alpha"], 5);
}

TEST_F(Cli, CachedRunIsByteIdentical) {
  const std::vector<std::string> args{"classify", "--n", "6", "--sample", "100", "--seed", "7"};
  const auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_)) files += e.path().extension() == ".json";
  EXPECT_EQ(files, 1U);
  const auto second = run(args);
  EXPECT_EQ(first.out, second.out);
  auto fresh = args;
  fresh.push_back("--no-cache");
  EXPECT_EQ(run(fresh).out, first.out);
}

TEST_F(Cli, CachePreservesExitCode) {
  const std::vector<std::string> args{"verify", "evasive2", "--n", "3", "--alpha", "2", "--beta", "3",
                                      "--gamma", "4", "--bound", "2"};
  EXPECT_EQ(run(args).code, 1);
  EXPECT_EQ(run(args).code, 1);
}

TEST_F(Cli, EnvironmentSelectsResultsDir) {
  const fs::path env_dir = dir_ / "env";
  ::setenv("SCATSEQ_RESULTS_DIR", env_dir.c_str(), 1);
  const auto r = run({"bound", "--p", "2", "--h", "2", "--n", "12", "--I", "1", "--J", "3"}, false);
  ::unsetenv("SCATSEQ_RESULTS_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(env_dir));
  EXPECT_FALSE(fs::is_empty(env_dir));
}

TEST_F(Cli, ConfigFileSetsDefaults) {
  const fs::path cfg = dir_ / "run.conf";
  std::ofstream(cfg) << "p=2\nh=2\nn=12\nI=1\nJ=3\n";
  const auto r = run({"bound", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["bound"]["raw"], "4080/72");
}

TEST_F(Cli, CsvAndJsonAgree) {
  const auto j = run({"classify", "--n", "6", "--sample", "300", "--seed", "7"});
  const auto c = run({"classify", "--n", "6", "--sample", "300", "--seed", "7", "--format", "csv"});
  const auto parsed = nlohmann::json::parse(j.out);
  const auto rows = std::count(c.out.begin(), c.out.end(), '\n') - 1;
  EXPECT_EQ(static_cast<std::size_t>(rows), parsed["result"]["class_count"].get<std::size_t>());
}

TEST_F(Cli, OtherSubcommandsRun) {
  EXPECT_EQ(run({"extensions", "--n", "3", "--alpha", "2", "--beta", "3", "--gamma", "4", "--m-max", "8"}).code, 0);
  EXPECT_EQ(run({"verify", "tightness", "--n", "3", "--alpha", "2", "--beta", "3", "--gamma", "4"}).code, 0);
  EXPECT_EQ(run({"verify", "tightness", "--n", "3", "--lambda1", "3", "--lambda2", "3"}).code, 2);
  const auto text = run({"field-info", "--n", "3", "--format", "text"});
  EXPECT_NE(text.out.find("result.order: 7"), std::string::npos);
  EXPECT_EQ(run({"verify", "evasive3", "--n", "3", "--alpha", "2", "--beta", "3", "--gamma", "4", "--sample",
                 "2000", "--seed", "42"})
                .code,
            0);
}
