#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "support.hpp"

using crncex::testing::kSolver;
using crncex::testing::model_path;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = crncex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("CRN_CEX_SOLVER");
    dir_ = fs::temp_directory_path() /
           ("crncex-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  nlohmann::json report() const {
    std::ifstream in(dir_ / "report.json");
    return nlohmann::json::parse(in);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CheckSingleSpecies) {
  const Outcome r = run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "100",
                     "--prob", "1e-20", "--solver", kSolver, "--out", dir_.string(), "--emit",
                     "dot,json,prism"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("outcome: counterexample"), std::string::npos);
  for (const char* f : {"report.json", "witness_ctmc.json", "witness_ctmc.dot", "witness_ctmc.prism"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const auto rep = report();
  EXPECT_EQ(rep["outcome"], "counterexample");
  EXPECT_GT(rep["probability"].get<double>(), 1e-20);
  EXPECT_GT(rep["cex_size"].get<int>(), 0);
  EXPECT_EQ(rep["witness_count"], 1);
  EXPECT_EQ(rep["longest_witness"], 30);
  EXPECT_TRUE(rep["input_digest"].get<std::string>().starts_with("fnv1a64:"));
  EXPECT_EQ(rep["config"]["solver"], kSolver);
  for (const char* phase : {"solving", "probability", "graph", "total"}) {
    EXPECT_TRUE(rep["timings"].contains(phase)) << phase;
  }
}

TEST_F(Cli, ReportsAreReproducible) {
  const std::vector<std::string> args{"check", model_path("single_species.crn"), "--target", "S2=70",
                                      "--time", "100", "--prob", "1e-20", "--solver", kSolver,
                                      "--out", dir_.string()};
  ASSERT_EQ(run(args).code, 0);
  auto first = report();
  ASSERT_EQ(run(args).code, 0);
  auto second = report();
  first.erase("timings");
  second.erase("timings");
  EXPECT_EQ(first, second);
}

TEST_F(Cli, BudgetExhaustedExitsTwo) {
  const Outcome r = run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "100",
                     "--prob", "0.5", "--budget-secs", "3", "--solver", kSolver, "--out",
                     dir_.string()});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(report()["outcome"], "budget-exhausted");
  EXPECT_GT(report()["probability"].get<double>(), 0.0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"check", "/nonexistent.crn", "--target", "S2=70", "--time", "1", "--prob", "0.1"}).code, 1);
  EXPECT_EQ(run({"check", model_path("single_species.crn"), "--target", "S2", "--time", "1",
                 "--prob", "0.1", "--out", dir_.string()})
                .code,
            1);
  EXPECT_EQ(run({"check", model_path("single_species.crn"), "--target", "S9=3", "--time", "1",
                 "--prob", "0.1", "--out", dir_.string()})
                .code,
            1);
  EXPECT_EQ(run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "1",
                 "--prob", "0.1", "--dnc", "7", "--solver", kSolver, "--out", dir_.string()})
                .code,
            1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, SolverNotFound) {
  const Outcome r = run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "100",
                     "--prob", "1e-20", "--solver", "/nonexistent/z3 -in", "--out", dir_.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("solver"), std::string::npos);
}

TEST_F(Cli, EnvironmentOverridesSolver) {
  setenv("CRN_CEX_SOLVER", "/nonexistent/z3 -in", 1);
  const Outcome r = run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "100",
                     "--prob", "1e-20", "--solver", kSolver, "--out", dir_.string()});
  unsetenv("CRN_CEX_SOLVER");
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, OraclePaths) {
  const Outcome two = run({"oracle", "paths", model_path("single_species.crn"), "--target", "S2=42", "--k", "2"});
  EXPECT_EQ(two.code, 0);
  EXPECT_EQ(two.out, "1\n");
  const Outcome four = run({"oracle", "paths", model_path("single_species.crn"), "--target", "S2=42", "--k", "4"});
  EXPECT_EQ(four.out, "0\n");
}

TEST_F(Cli, OracleProbOnExport) {
  fs::create_directories(dir_);
  const fs::path file = dir_ / "two_state.json";
  std::ofstream(file) << R"({"species": ["A"],
    "nodes": [{"id": 0, "populations": [1], "is_sink": false, "is_initial": true, "is_target": false},
              {"id": 1, "populations": [0], "is_sink": false, "is_initial": false, "is_target": true}],
    "edges": [{"src": 0, "dst": 1, "rate": 1.0, "reactions": [0]}]})";
  const Outcome r = run({"oracle", "prob", file.string(), "--time", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.632121\n");
  const Outcome u = run({"oracle", "prob", file.string(), "--time", "1", "--method", "uniformization"});
  EXPECT_EQ(u.out, "0.632121\n");
}

TEST_F(Cli, OracleProbReadsEngineExport) {
  ASSERT_EQ(run({"check", model_path("single_species.crn"), "--target", "S2=70", "--time", "100",
                 "--prob", "1e-20", "--solver", kSolver, "--out", dir_.string()})
                .code,
            0);
  const Outcome r = run({"oracle", "prob", (dir_ / "witness_ctmc.json").string(), "--time", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), report()["probability"].get<double>(),
              1e-6 * report()["probability"].get<double>());
}
