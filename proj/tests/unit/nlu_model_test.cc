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

#include "schemadst/model/nlu_model.h"

#include <cmath>
#include <numeric>

#include <tuple>

#include <gtest/gtest.h>

#include "schemadst/examples/example_builder.h"
#include "test_util.h"

namespace schemadst {
namespace {

using testing::TinyModelConfig;
using testing::TinySchema;
using testing::TinyTurn;
using testing::TinyVocabulary;

std::vector<QAExample> TinyExamples(const Tokenizer& tokenizer) {
  ExampleConfig config;
  const DialogueTurn turn = TinyTurn();
  return BuildExamples(turn, TinySchema(), tokenizer, config);
}

std::vector<QAExample> OfTask(const std::vector<QAExample>& all, TaskKind task) {
  std::vector<QAExample> out;
  for (const auto& ex : all) {
    if (ex.task == task) out.push_back(ex);
  }
  return out;
}

// Central finite differences of the mean evaluation loss, for both
// normalization placements with and without the same-token match features.
class NluModelGradientTest : public ::testing::TestWithParam<std::tuple<bool, bool>> {};

TEST_P(NluModelGradientTest, AnalyticMatchesFiniteDifferences) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  // Keep the check fast: a few examples of every task.
  std::vector<QAExample> batch;
  for (TaskKind task : kAllTasks) {
    const auto of_task = OfTask(examples, task);
    for (std::size_t i = 0; i < of_task.size() && i < 2; ++i) batch.push_back(of_task[i]);
  }
  ModelConfig config = TinyModelConfig(tokenizer.vocabulary().size());
  config.encoder.pre_norm = std::get<0>(GetParam());
  config.encoder.match_bias = std::get<1>(GetParam());
  config.encoder.exact_match = std::get<1>(GetParam());
  NluModel<double> model(config);
  auto& store = model.store();

  Gradients<double> grads = store.ZeroGradients();
  for (const auto& ex : batch) {
    model.AccumulateGradients(ex, grads, 1.0 / batch.size(), nullptr);
  }

  const double h = 1e-5;
  for (int p = 0; p < store.size(); ++p) {
    Matrix<double>& w = store.value(p);
    Matrix<double> numeric(w.rows(), w.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double saved = w.data()[i];
      w.data()[i] = saved + h;
      const double up = model.Loss(batch);
      w.data()[i] = saved - h;
      const double down = model.Loss(batch);
      w.data()[i] = saved;
      numeric.data()[i] = (up - down) / (2 * h);
    }
    const double diff = (numeric - grads[p]).norm();
    const double scale = numeric.norm() + grads[p].norm();
    const double rel = scale > 1e-10 ? diff / scale : diff;
    EXPECT_LT(rel, 1e-4) << store.name(p) << " analytic norm " << grads[p].norm()
                         << " numeric norm " << numeric.norm();
  }
}

INSTANTIATE_TEST_SUITE_P(Encoders, NluModelGradientTest,
                         ::testing::Combine(::testing::Bool(), ::testing::Bool()),
                         [](const auto& info) {
                           return std::string(std::get<0>(info.param) ? "PreNorm" : "PostNorm") +
                                  (std::get<1>(info.param) ? "MatchFeatures" : "");
                         });

TEST(NluModelLossTest, MaskingLeavesOtherHeadsWithZeroGradient) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  NluModel<float> model(TinyModelConfig(tokenizer.vocabulary().size()));
  for (TaskKind task : kAllTasks) {
    const auto batch = OfTask(examples, task);
    ASSERT_FALSE(batch.empty());
    Gradients<float> grads = model.store().ZeroGradients();
    for (const auto& ex : batch) model.AccumulateGradients(ex, grads, 1.0f, nullptr);
    for (TaskKind other : kAllTasks) {
      double norm = 0;
      for (int id : model.HeadParameterIds(other)) norm += grads[id].squaredNorm();
      if (other == task) {
        EXPECT_GT(norm, 0.0) << TaskName(task);
      } else {
        EXPECT_EQ(norm, 0.0) << TaskName(task) << " leaked into " << TaskName(other);
      }
    }
  }
}

TEST(NluModelLossTest, BatchLossIsMeanOfHandComputedCrossEntropies) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  NluModel<double> model(TinyModelConfig(tokenizer.vocabulary().size()));
  const QAExample intent = OfTask(examples, TaskKind::kIntent)[0];
  const QAExample status = OfTask(examples, TaskKind::kStatus)[0];

  auto hand_ce = [](const std::vector<double>& logits, int target) {
    double max = logits[0];
    for (double v : logits) max = std::max(max, v);
    double sum = 0;
    for (double v : logits) sum += std::exp(v - max);
    return -(logits[target] - max - std::log(sum));
  };
  const auto li = model.Forward(intent);
  const auto ls = model.Forward(status);
  const double a = hand_ce(li.classes[0], std::get<BinaryLabel>(intent.label).value);
  const double b =
      hand_ce(ls.classes[2], static_cast<int>(std::get<SlotStatus>(status.label)));
  const std::vector<QAExample> batch = {intent, status};
  EXPECT_NEAR(model.Loss(batch), (a + b) / 2, 1e-12);
}

TEST(NluModelLossTest, PerfectLogitsGiveZeroLoss) {
  QAExample ex;
  ex.task = TaskKind::kIntent;
  ex.valid_length = 3;
  ex.label = BinaryLabel{1};
  ex.loss_mask = {1, 0, 0, 0, 0};
  ExampleLogits<double> logits;
  logits.classes[0] = {-1000.0, 1000.0};
  EXPECT_EQ(ExampleLoss(logits, ex), 0.0);

  ex.task = TaskKind::kSpan;
  ex.label = SpanTarget{0, 0};
  ex.loss_mask = {0, 0, 0, 0, 1};
  logits.start = {1000.0, -1000.0, -1000.0};
  logits.end = {1000.0, -1000.0, -1000.0};
  EXPECT_EQ(ExampleLoss(logits, ex), 0.0);
}

TEST(NluModelLossTest, AllZeroMaskIsRejected) {
  QAExample ex;
  ex.valid_length = 1;
  ex.loss_mask = {0, 0, 0, 0, 0};
  ExampleLogits<double> logits;
  EXPECT_THROW(ExampleLoss(logits, ex), InputError);
}

TEST(NluModelForwardTest, PermutationAndDuplicationKeepLogits) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  auto examples = TinyExamples(tokenizer);
  NluModel<float> model(TinyModelConfig(tokenizer.vocabulary().size()));
  const auto forward = model.ForwardBatch(examples);
  std::vector<int> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::vector<QAExample> permuted;
  for (int i : order) permuted.push_back(examples[i]);
  permuted.push_back(examples[0]);
  const auto backward = model.ForwardBatch(permuted);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& a = forward[order[k]];
    const auto& b = backward[k];
    for (int h = 0; h < kNumClassHeads; ++h) EXPECT_EQ(a.classes[h], b.classes[h]);
    for (int i = 0; i < examples[order[k]].valid_length; ++i) {
      EXPECT_EQ(a.start[i], b.start[i]);
      EXPECT_EQ(a.end[i], b.end[i]);
    }
  }
  EXPECT_EQ(backward.back().classes, forward[0].classes);
}

TEST(NluModelForwardTest, EveryHeadProducesOutputForAnyTask) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  NluModel<float> model(TinyModelConfig(tokenizer.vocabulary().size()));
  const auto logits = model.Forward(examples[0]);
  for (int h = 0; h < kNumClassHeads; ++h) {
    EXPECT_EQ(static_cast<int>(logits.classes[h].size()), kClassHeadWidths[h]);
  }
  EXPECT_EQ(static_cast<int>(logits.start.size()), examples[0].valid_length);
  EXPECT_EQ(static_cast<int>(logits.end.size()), examples[0].valid_length);
}

TEST(NluModelForwardTest, PaddingDoesNotChangeOutputs) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  NluModel<double> model(TinyModelConfig(tokenizer.vocabulary().size()));
  for (const auto& ex : {examples.front(), examples.back()}) {
    QAExample padded = ex;
    for (int i = 0; i < 7; ++i) {
      padded.token_ids.push_back(tokenizer.pad_id());
      padded.segment_ids.push_back(0);
    }
    Rng unused(0);
    const EncoderInput a{ex.token_ids, ex.segment_ids, ex.valid_length};
    const EncoderInput b{padded.token_ids, padded.segment_ids, padded.valid_length};
    const auto out_a = model.encoder().Forward(model.store(), a, nullptr, nullptr);
    const auto out_b = model.encoder().Forward(model.store(), b, nullptr, nullptr);
    EXPECT_LT((out_a.pooled - out_b.pooled).cwiseAbs().maxCoeff(), 1e-6);
    ASSERT_EQ(out_a.token_states.rows(), ex.valid_length);
    EXPECT_LT((out_a.token_states - out_b.token_states.topRows(ex.valid_length))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-6);
  }
}

TEST(NluModelForwardTest, SoftmaxSumsToOne) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = TinyExamples(tokenizer);
  NluModel<float> model(TinyModelConfig(tokenizer.vocabulary().size()));
  for (const auto& ex : examples) {
    const auto logits = model.Forward(ex);
    for (int h = 0; h < kNumClassHeads; ++h) {
      const auto p = Softmax<float>(logits.classes[h]);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
    }
    const auto ps = Softmax<float>(logits.start);
    EXPECT_NEAR(std::accumulate(ps.begin(), ps.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(NluModelForwardTest, OutOfVocabularyIdIsRejected) {
  const WordPieceTokenizer tokenizer(TinyVocabulary());
  auto ex = TinyExamples(tokenizer)[0];
  ex.token_ids[1] = tokenizer.vocabulary().size() + 5;
  NluModel<float> model(TinyModelConfig(tokenizer.vocabulary().size()));
  EXPECT_THROW(model.Forward(ex), InputError);
}

}  // namespace
}  // namespace schemadst
