/* Copyright 2026 The schemadst Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "schemadst/cli/commands.h"
#include "test_util.h"

namespace schemadst {
namespace {

nlohmann::json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

int RunArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "schemadst");
  return RunCli(args);
}

// One small synthetic corpus shared by the pipeline tests.
class CliPipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new std::filesystem::path(testing::TempDir("cli_pipeline"));
    ASSERT_EQ(RunArgs({"synth", "--data-dir", Data(), "--dialogues", "40"}), kExitOk);
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string Data() { return (*dir_ / "data").string(); }
  static std::string Out(const std::string& name) { return (*dir_ / name).string(); }

  static std::filesystem::path* dir_;
};

std::filesystem::path* CliPipelineTest::dir_ = nullptr;

TEST_F(CliPipelineTest, OracleEvaluateGivesPerfectJointGoalAccuracy) {
  const std::string out = Out("oracle");
  for (const char* split : {"train", "dev"}) {
    ASSERT_EQ(RunArgs({"predict", "--oracle", "--data-dir", Data(), "--output-dir", out,
                   "--split", split}),
              kExitOk);
    ASSERT_EQ(RunArgs({"track", "--data-dir", Data(), "--output-dir", out, "--split", split}),
              kExitOk);
    ASSERT_EQ(RunArgs({"evaluate", "--data-dir", Data(), "--output-dir", out, "--split", split}),
              kExitOk);
    const auto metrics = ReadJson(std::filesystem::path(out) /
                                  (std::string("metrics_") + split + ".json"));
    for (const char* mode : {"strict", "fuzzy"}) {
      const auto& report = metrics[mode];
      EXPECT_EQ(report["joint_ga"]["all"], 1.0) << split;
      EXPECT_EQ(report["average_ga"]["all"], 1.0) << split;
      EXPECT_EQ(report["intent_accuracy"]["all"], 1.0) << split;
      EXPECT_EQ(report["requested_slot_f1"]["all"], 1.0) << split;
    }
  }
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(out) / "predict_config.json"));
}

TEST_F(CliPipelineTest, PreprocessReportsRatiosAndBalancingOnlyShrinksStatus) {
  const std::string on = Out("pre_on");
  const std::string off = Out("pre_off");
  ASSERT_EQ(RunArgs({"preprocess", "--data-dir", Data(), "--output-dir", on}), kExitOk);
  ASSERT_EQ(RunArgs({"preprocess", "--data-dir", Data(), "--output-dir", off, "--no-balance"}),
            kExitOk);
  const auto stats_on = ReadJson(std::filesystem::path(on) / "stats.json");
  const auto stats_off = ReadJson(std::filesystem::path(off) / "stats.json");
  const auto& train_on = stats_on["train"]["after_balancing"];
  const auto& train_off = stats_off["train"]["after_balancing"];
  double sum = 0.0;
  for (const auto& [task, pct] : train_on["task_percent"].items()) sum += pct.get<double>();
  EXPECT_NEAR(sum, 100.0, 1e-9);
  for (const auto& [task, count] : train_off["count"].items()) {
    if (task == "STATUS") {
      EXPECT_LT(train_on["count"][task].get<long>(), count.get<long>());
    } else {
      EXPECT_EQ(train_on["count"][task], count) << task;
    }
  }
}

TEST_F(CliPipelineTest, EvaluateTableHasSeenUnseenTriples) {
  const std::string out = Out("table");
  ASSERT_EQ(RunArgs({"predict", "--oracle", "--data-dir", Data(), "--output-dir", out}), kExitOk);
  ASSERT_EQ(RunArgs({"track", "--data-dir", Data(), "--output-dir", out}), kExitOk);
  RunConfig config;
  config.data_dir = Data();
  config.output_dir = out;
  config.Finalize();
  std::ostringstream table, log;
  const auto reports = CmdEvaluate(config, table, log);
  ASSERT_EQ(reports.size(), 2u);
  for (const char* row : {"intent_accuracy", "requested_slot_f1", "average_ga", "joint_ga"}) {
    EXPECT_NE(table.str().find(row), std::string::npos);
  }
  EXPECT_NE(table.str().find("100.0(100.0/100.0)"), std::string::npos) << table.str();
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(RunArgs({}), kExitUsage);
  EXPECT_EQ(RunArgs({"frobnicate"}), kExitUsage);
  EXPECT_EQ(RunArgs({"train", "--epochs", "zero"}), kExitUsage);
  const auto dir = testing::TempDir("cli_exit");
  // Missing inputs are a usage problem with a remediation hint.
  EXPECT_EQ(RunArgs({"preprocess", "--data-dir", (dir / "missing").string(), "--output-dir",
                     (dir / "out").string()}),
            kExitUsage);
  // Unknown config key.
  std::ofstream(dir / "bad.json") << R"({"no_such_key": 1})";
  EXPECT_EQ(RunArgs({"synth", "--config", (dir / "bad.json").string()}), kExitValidation);
  // Out-of-range value.
  EXPECT_EQ(RunArgs({"synth", "--data-dir", (dir / "d").string(), "--dialogues", "-3"}),
            kExitValidation);
}

TEST(CliTest, RunConfigRoundTripsAndPropagatesSeed) {
  RunConfig config;
  config.seed = 123;
  config.data_dir = "d";
  config.Finalize();
  EXPECT_EQ(config.train.seed, 123u);
  EXPECT_EQ(config.synth.seed, 123u);
  EXPECT_EQ(config.examples.seed, 123u);
  const RunConfig back = RunConfig::FromJson(config.ToJson());
  EXPECT_EQ(back.ToJson(), config.ToJson());
}

}  // namespace
}  // namespace schemadst
