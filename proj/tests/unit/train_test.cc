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

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "schemadst/common/error.h"
#include "schemadst/examples/example_builder.h"
#include "schemadst/model/checkpoint.h"
#include "schemadst/train/optimizer.h"
#include "schemadst/train/train_config.h"
#include "schemadst/train/trainer.h"
#include "test_util.h"

namespace schemadst {
namespace {

using testing::TinyModelConfig;
using testing::TinySchema;
using testing::TinyTurn;
using testing::TinyVocabulary;

TEST(LrScheduleTest, Endpoints) {
  const LrSchedule s(1e-4, 1000, 0.1);
  EXPECT_EQ(s.warmup_steps(), 100);
  EXPECT_DOUBLE_EQ(s.At(0), 0.0);
  EXPECT_DOUBLE_EQ(s.At(100), 1e-4);
  EXPECT_DOUBLE_EQ(s.At(1000), 0.0);
  EXPECT_DOUBLE_EQ(s.At(50), 0.5e-4);
  EXPECT_DOUBLE_EQ(s.At(550), 0.5e-4);
}

TEST(LrScheduleTest, WarmupIsFloorOfRatio) {
  EXPECT_EQ(LrSchedule(1.0, 99, 0.1).warmup_steps(), 9);
  EXPECT_EQ(LrSchedule(1.0, 10, 0.0).warmup_steps(), 0);
  EXPECT_DOUBLE_EQ(LrSchedule(1.0, 10, 0.0).At(0), 1.0);
}

TEST(LrScheduleTest, PiecewiseShapeAndContinuity) {
  for (double power : {0.5, 1.0, 2.0}) {
    const LrSchedule s(2e-3, 437, 0.1, power);
    const long w = s.warmup_steps();
    for (long k = 1; k <= w; ++k) EXPECT_GE(s.At(k), s.At(k - 1));
    for (long k = w + 1; k <= s.total_steps(); ++k) EXPECT_LE(s.At(k), s.At(k - 1));
    // Neighbours of the junction stay within one step's change of the peak.
    EXPECT_NEAR(s.At(w - 1), 2e-3, 2e-3 / w + 1e-15);
    EXPECT_NEAR(s.At(w + 1), 2e-3, 2e-3 * 3.0 / (437 - w));
    for (long k = 0; k <= s.total_steps(); ++k) {
      EXPECT_GE(s.At(k), 0.0);
      EXPECT_LE(s.At(k), 2e-3);
    }
  }
}

TEST(TrainConfigTest, JsonRoundTripAndValidation) {
  TrainConfig c;
  c.epochs = 5;
  c.learning_rate = 3e-4;
  c.seed = 42;
  const TrainConfig back = TrainConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.epochs, 5);
  EXPECT_DOUBLE_EQ(back.learning_rate, 3e-4);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_THROW(TrainConfig::FromJson({{"epochz", 3}}), ConfigError);
  c.clip_norm = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.warmup_ratio = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(DefaultsTest, MatchPublishedHyperparameters) {
  const TrainConfig c;
  EXPECT_EQ(c.epochs, 3);
  EXPECT_EQ(c.batch_size, 32);
  EXPECT_DOUBLE_EQ(c.learning_rate, 1e-4);
  EXPECT_DOUBLE_EQ(c.warmup_ratio, 0.1);
  EXPECT_DOUBLE_EQ(c.decay_power, 1.0);
  EXPECT_DOUBLE_EQ(c.clip_norm, 1.0);
  EXPECT_DOUBLE_EQ(c.adam.beta1, 0.9);
  EXPECT_DOUBLE_EQ(c.adam.beta2, 0.999);
  EXPECT_DOUBLE_EQ(c.adam.epsilon, 1e-8);
}

TEST(ClipTest, NormFiveRescaledByOneFifth) {
  ParameterStore<double> store;
  const int a = store.Add("a", 1, 2);
  const int b = store.Add("b", 1, 1);
  Gradients<double> grads = store.ZeroGradients();
  grads[a] << 3.0, 0.0;
  grads[b] << 4.0;
  EXPECT_DOUBLE_EQ(GlobalNorm(grads), 5.0);
  EXPECT_DOUBLE_EQ(ClipGlobalNorm(grads, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(grads[a](0, 0), 0.6);
  EXPECT_DOUBLE_EQ(grads[b](0, 0), 0.8);
  EXPECT_NEAR(GlobalNorm(grads), 1.0, 1e-15);
  // Below the threshold nothing changes.
  EXPECT_DOUBLE_EQ(ClipGlobalNorm(grads, 2.0), GlobalNorm(grads));
  EXPECT_DOUBLE_EQ(grads[a](0, 0), 0.6);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  // With bias correction the first update is lr * g / (|g| + eps').
  ParameterStore<double> store;
  const int p = store.Add("p", 1, 2);
  store.value(p) << 1.0, -1.0;
  Gradients<double> grads = store.ZeroGradients();
  grads[p] << 0.5, -2.0;
  Adam<double> adam(store, {});
  adam.Step(store, grads, 0.1);
  EXPECT_NEAR(store.value(p)(0, 0), 0.9, 1e-7);
  EXPECT_NEAR(store.value(p)(0, 1), -0.9, 1e-7);
  EXPECT_EQ(adam.steps(), 1);
}

std::vector<QAExample> TinyExamples() {
  WordPieceTokenizer tokenizer(TinyVocabulary());
  return BuildExamples(TinyTurn(), TinySchema(), tokenizer, {});
}

TEST(TrainerTest, IdenticalSeedsGiveBitwiseIdenticalLossCurves) {
  const auto examples = TinyExamples();
  const int vocab = TinyVocabulary().size();
  TrainConfig config;
  config.epochs = 2;
  config.batch_size = 4;
  config.learning_rate = 1e-2;
  config.seed = 9;
  ModelConfig mc = TinyModelConfig(vocab);
  mc.encoder.dropout = 0.1;  // exercise the dropout streams too
  NluModel<float> m1(mc), m2(mc);
  const auto r1 = Train<float>(config, examples, examples, m1);
  const auto r2 = Train<float>(config, examples, examples, m2);
  ASSERT_EQ(r1.step_losses.size(), r2.step_losses.size());
  for (std::size_t i = 0; i < r1.step_losses.size(); ++i) {
    EXPECT_EQ(r1.step_losses[i], r2.step_losses[i]) << "step " << i;
  }
  EXPECT_EQ(r1.steps, 2 * 4);  // ceil(14 / 4) batches per epoch
}

TEST(TrainerTest, LossDecreasesAndLogIsWritten) {
  const auto examples = TinyExamples();
  TrainConfig config;
  config.epochs = 30;
  config.batch_size = 7;
  config.learning_rate = 1e-2;
  NluModel<float> model(TinyModelConfig(TinyVocabulary().size()));
  std::ostringstream log;
  TrainOutputs outputs;
  outputs.log = &log;
  const auto result = Train<float>(config, examples, {}, model, outputs);
  ASSERT_EQ(result.epochs.size(), 30u);
  EXPECT_LT(result.epochs.back().train_loss, 0.5 * result.epochs.front().train_loss);
  EXPECT_TRUE(std::isnan(result.epochs.front().dev_loss));
  EXPECT_NE(log.str().find("\"type\":\"epoch\""), std::string::npos);
  EXPECT_NE(log.str().find("\"type\":\"step\""), std::string::npos);
}

TEST(TrainerTest, BestDevParametersAreRestoredAndCheckpointed) {
  const auto examples = TinyExamples();
  TrainConfig config;
  config.epochs = 3;
  config.batch_size = 14;
  config.learning_rate = 5e-2;
  NluModel<double> model(TinyModelConfig(TinyVocabulary().size()));
  const auto path = testing::TempDir("trainer_ckpt") / "model.ckpt";
  TrainOutputs outputs;
  outputs.checkpoint = path;
  const auto result = Train<double>(config, examples, examples, model, outputs);
  ASSERT_GE(result.best_epoch, 0);
  double best = result.epochs[result.best_epoch].dev_loss;
  for (const auto& e : result.epochs) EXPECT_GE(e.dev_loss, best);
  EXPECT_DOUBLE_EQ(EvaluateLoss<double>(model, examples), best);
  auto loaded = LoadCheckpoint<double>(path);
  EXPECT_DOUBLE_EQ(EvaluateLoss<double>(*loaded, examples), best);
}

TEST(TrainerTest, NonFiniteLossIsNumericError) {
  const auto examples = TinyExamples();
  TrainConfig config;
  config.epochs = 1;
  config.batch_size = 14;
  NluModel<double> model(TinyModelConfig(TinyVocabulary().size()));
  for (int id = 0; id < model.store().size(); ++id) {
    model.store().value(id).setConstant(std::numeric_limits<double>::quiet_NaN());
  }
  EXPECT_THROW(Train<double>(config, examples, {}, model), NumericError);
}

}  // namespace
}  // namespace schemadst
