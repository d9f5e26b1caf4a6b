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

#include "schemadst/cli/commands.h"

#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "schemadst/common/error.h"
#include "schemadst/data/sgd_io.h"
#include "schemadst/examples/example_io.h"
#include "schemadst/model/checkpoint.h"
#include "schemadst/model/predictor.h"
#include "schemadst/synth/synth.h"
#include "schemadst/tracker/state_tracker.h"
#include "schemadst/train/trainer.h"

namespace schemadst {
namespace fs = std::filesystem;
namespace {

void WriteResolvedConfig(const RunConfig& config, const fs::path& dir,
                         const std::string& stage) {
  fs::create_directories(dir);
  std::ofstream out(dir / (stage + "_config.json"));
  out << config.ToJson().dump(2) << "\n";
  if (!out) throw Error("cannot write config to " + dir.string());
}

void RequireSplit(const RunConfig& config, const std::string& split) {
  if (config.data_dir.empty()) {
    throw UsageError(std::string("no data directory; pass --data-dir or set ") +
                     kDataRootEnv);
  }
  if (!fs::exists(config.SplitDir(split) / "schema.json")) {
    throw UsageError("missing " + (config.SplitDir(split) / "schema.json").string() +
                     "; point --data-dir at an SGD-layout directory or run "
                     "`schemadst synth` first");
  }
}

void RequireFile(const fs::path& path, const std::string& hint) {
  if (!fs::exists(path)) throw UsageError("missing " + path.string() + "; " + hint);
}

std::vector<std::string> CorpusTexts(const std::vector<ServiceSchema>& schemas,
                                     const std::vector<Dialogue>& dialogues) {
  std::vector<std::string> texts;
  for (const auto& s : schemas) {
    texts.push_back(s.service_name);
    texts.push_back(s.description);
    for (const auto& i : s.intents) {
      texts.push_back(i.name);
      texts.push_back(i.description);
    }
    for (const auto& slot : s.slots) {
      texts.push_back(slot.name);
      texts.push_back(slot.description);
      for (const auto& v : slot.possible_values) texts.push_back(v);
    }
  }
  for (const auto& d : dialogues) {
    for (const auto& t : d.turns) {
      texts.push_back(t.system_utterance);
      texts.push_back(t.user_utterance);
    }
  }
  return texts;
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

nlohmann::json ParseLine(const std::string& line, const fs::path& path, std::size_t n) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + " line " + std::to_string(n + 1) + ": " + e.what());
  }
}

// Runs fn(i) for i in [0, n) on `workers` threads; results are written by
// index so output order never depends on scheduling.
template <typename Fn>
void ParallelFor(int n, int workers, Fn fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min(workers, n); ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Vocabulary ResolveVocabulary(const RunConfig& config, std::ostream& log) {
  if (fs::exists(config.vocab)) return Vocabulary::Load(config.vocab);
  Vocabulary vocab;
  if (!config.data_dir.empty() && fs::exists(config.data_dir / "vocab.txt")) {
    vocab = Vocabulary::Load(config.data_dir / "vocab.txt");
    log << "using vocabulary " << (config.data_dir / "vocab.txt").string() << "\n";
  } else {
    RequireSplit(config, "train");
    const auto schemas = LoadSchemas(config.SplitDir("train"));
    const auto dialogues = LoadDialogues(config.SplitDir("train"), schemas);
    VocabularyOptions options;
    options.max_words = config.vocab_max_words;
    vocab = BuildVocabulary(CorpusTexts(schemas, dialogues), options);
    log << "built vocabulary of " << vocab.size() << " tokens from the train split\n";
  }
  if (config.vocab.has_parent_path()) fs::create_directories(config.vocab.parent_path());
  vocab.Save(config.vocab);
  return vocab;
}

void CmdSynth(const RunConfig& config, std::ostream& log) {
  if (config.data_dir.empty()) {
    throw UsageError(std::string("synth needs an output location; pass --data-dir or set ") +
                     kDataRootEnv);
  }
  const SynthCorpus corpus = GenerateCorpus(config.synth);
  WriteCorpus(corpus, config.data_dir);
  WriteResolvedConfig(config, config.data_dir, "synth");
  log << "synth: " << corpus.train_schemas.size() << " seen and "
      << corpus.eval_schemas.size() - corpus.train_schemas.size() << " unseen services, "
      << corpus.train_dialogues.size() << " train and " << corpus.eval_dialogues.size()
      << " dev dialogues written to " << config.data_dir.string() << "\n";
}

void CmdPreprocess(const RunConfig& config, std::ostream& log) {
  RequireSplit(config, "train");
  fs::create_directories(config.output_dir);
  const Vocabulary vocab = ResolveVocabulary(config, log);
  const WordPieceTokenizer tokenizer(vocab);

  nlohmann::ordered_json stats;
  for (const std::string split : {"train", "dev"}) {
    if (!fs::exists(config.SplitDir(split) / "schema.json")) continue;
    const auto schemas = LoadSchemas(config.SplitDir(split));
    const auto dialogues = LoadDialogues(config.SplitDir(split), schemas);
    const ExampleBuilder builder(schemas, tokenizer, config.examples);
    BuildStats build;
    std::vector<QAExample> examples = builder.BuildCorpus(dialogues, &build);
    const ExampleStatistics before = ComputeStatistics(examples);
    if (config.examples.balance) {
      examples = BalanceStatusExamples(std::move(examples), config.examples.seed);
    }
    const ExampleStatistics after = ComputeStatistics(examples);
    WriteExamplesJsonl(examples, config.ExamplesPath(split));
    stats[split] = {{"dialogues", dialogues.size()},
                    {"examples", examples.size()},
                    {"before_balancing", before.ToJson()},
                    {"after_balancing", after.ToJson()},
                    {"dropped_unbuildable", build.dropped_unbuildable},
                    {"truncated_spans", build.truncated_spans},
                    {"truncated_sequences", build.truncated_sequences}};
    log << "preprocess " << split << ": " << dialogues.size() << " dialogues -> "
        << examples.size() << " examples (" << build.dropped_unbuildable
        << " unbuildable, " << build.truncated_spans << " spans lost to truncation)\n";
  }
  std::ofstream out(config.output_dir / "stats.json");
  out << stats.dump(2) << "\n";
  WriteResolvedConfig(config, config.output_dir, "preprocess");
}

void CmdTrain(const RunConfig& config, std::ostream& log) {
  RequireFile(config.ExamplesPath("train"), "run `schemadst preprocess` first");
  RequireFile(config.vocab, "run `schemadst preprocess` first");
  const Vocabulary vocab = Vocabulary::Load(config.vocab);
  const auto train = ReadExamplesJsonl(config.ExamplesPath("train"));
  std::vector<QAExample> dev;
  if (fs::exists(config.ExamplesPath("dev"))) dev = ReadExamplesJsonl(config.ExamplesPath("dev"));

  ModelConfig model_config = config.model;
  model_config.encoder.vocab_size = vocab.size();
  NluModel<float> model(model_config);
  log << "train: " << train.size() << " train / " << dev.size() << " dev examples, "
      << model.store().ParameterCount() << " parameters\n";

  std::ofstream train_log(config.output_dir / "train_log.jsonl");
  TrainOutputs outputs;
  outputs.checkpoint = config.checkpoint;
  outputs.vocabulary = {config.vocab.string(), vocab.size(), vocab.Fingerprint()};
  outputs.checkpoint_extra = {{"train", config.train.ToJson()}};
  outputs.log = &train_log;
  outputs.on_epoch = [&log](const EpochSummary& e) {
    log << "epoch " << e.epoch << ": train loss " << e.train_loss << ", dev loss "
        << e.dev_loss << (e.best ? " (best)" : "") << "\n";
  };
  Train(config.train, train, dev, model, outputs);
  WriteResolvedConfig(config, config.output_dir, "train");
}

void CmdPredict(const RunConfig& config, std::ostream& log) {
  RequireSplit(config, config.split);
  const auto schemas = LoadSchemas(config.SplitDir(config.split));
  const auto dialogues = LoadDialogues(config.SplitDir(config.split), schemas);
  fs::create_directories(config.output_dir);

  std::unique_ptr<NluModel<float>> model;
  Vocabulary vocab;
  if (config.oracle) {
    vocab = ResolveVocabulary(config, log);
  } else {
    RequireFile(config.checkpoint, "run `schemadst train` or pass --checkpoint");
    RequireFile(config.vocab, "run `schemadst preprocess` first");
    vocab = Vocabulary::Load(config.vocab);
    CheckpointHeader header;
    model = LoadCheckpoint<float>(config.checkpoint, &header);
    if (header.vocabulary.fingerprint != vocab.Fingerprint()) {
      throw ValidationError("checkpoint was trained with a different vocabulary than " +
                            config.vocab.string());
    }
  }
  const WordPieceTokenizer tokenizer(vocab);
  const ExampleBuilder builder(schemas, tokenizer, config.examples);

  std::vector<std::vector<TurnPredictions>> results(dialogues.size());
  if (config.oracle) {
    ParallelFor(static_cast<int>(dialogues.size()), config.workers,
                [&](int i) { results[i] = OraclePredictions(dialogues[i], builder); });
  } else {
    const ModelPredictor<float> predictor(*model, builder, config.predict_batch_size);
    ParallelFor(static_cast<int>(dialogues.size()), config.workers, [&](int i) {
      for (const auto& turn : dialogues[i].turns) {
        results[i].push_back(predictor.Predict(turn));
      }
    });
  }
  std::ofstream out(config.PredictionsPath());
  long turns = 0;
  for (const auto& dialogue : results) {
    for (const auto& turn : dialogue) {
      out << ToJson(turn).dump() << "\n";
      ++turns;
    }
  }
  if (!out) throw Error("cannot write " + config.PredictionsPath().string());
  WriteResolvedConfig(config, config.output_dir, "predict");
  log << "predict " << config.split << (config.oracle ? " (oracle)" : "") << ": " << turns
      << " turns -> " << config.PredictionsPath().string() << "\n";
}

void CmdTrack(const RunConfig& config, std::ostream& log) {
  RequireSplit(config, config.split);
  RequireFile(config.PredictionsPath(), "run `schemadst predict` first");
  const auto schemas = LoadSchemas(config.SplitDir(config.split));
  const SchemaIndex index = IndexSchemas(schemas);
  const auto lines = ReadLines(config.PredictionsPath());

  std::ofstream out(config.StatesPath());
  DialogueState state;
  std::string current;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const TurnPredictions preds =
        TurnPredictionsFromJson(ParseLine(lines[n], config.PredictionsPath(), n));
    if (preds.dialogue_id != current) {
      state.clear();
      current = preds.dialogue_id;
    }
    state = Update(state, preds, index, config.tracker);
    DialogueTurn turn;
    turn.dialogue_id = preds.dialogue_id;
    turn.turn_index = preds.turn_index;
    for (const auto& s : preds.services) {
      FrameAnnotation frame;
      frame.service = s.service;
      turn.frames.push_back(std::move(frame));
    }
    out << TurnStateToJson(turn, state).dump() << "\n";
  }
  if (!out) throw Error("cannot write " + config.StatesPath().string());
  WriteResolvedConfig(config, config.output_dir, "track");
  log << "track " << config.split << ": " << lines.size() << " turns -> "
      << config.StatesPath().string() << "\n";
}

std::vector<MetricsReport> CmdEvaluate(const RunConfig& config, std::ostream& out,
                                       std::ostream& log) {
  RequireSplit(config, config.split);
  RequireFile(config.StatesPath(), "run `schemadst track` first");
  const auto schemas = LoadSchemas(config.SplitDir(config.split));
  const auto dialogues = LoadDialogues(config.SplitDir(config.split), schemas);
  const SchemaIndex index = IndexSchemas(schemas);
  std::vector<ServiceSchema> train_schemas;
  if (fs::exists(config.SplitDir("train") / "schema.json")) {
    train_schemas = LoadSchemas(config.SplitDir("train"));
  }
  const ServiceRegistry registry = MarkSeenServices(train_schemas, schemas);

  std::vector<PredictedFrame> predicted;
  const auto lines = ReadLines(config.StatesPath());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto frames = FramesFromStateJson(ParseLine(lines[n], config.StatesPath(), n));
    std::move(frames.begin(), frames.end(), std::back_inserter(predicted));
  }
  const auto pairs = AlignFrames(dialogues, predicted);
  std::vector<MetricsReport> reports;
  for (MatchMode mode : {MatchMode::kStrict, MatchMode::kFuzzy}) {
    reports.push_back(ComputeMetrics(pairs, index, registry, mode));
  }
  const MatchMode primary = config.fuzzy_match ? MatchMode::kFuzzy : MatchMode::kStrict;
  nlohmann::json report = {{"split", config.split},
                           {"frames", pairs.size()},
                           {"primary_mode", MatchModeName(primary)},
                           {"seen_services", registry.seen_services},
                           {"strict", reports[0].ToJson()},
                           {"fuzzy", reports[1].ToJson()}};
  fs::create_directories(config.output_dir);
  std::ofstream file(config.MetricsPath());
  file << report.dump(2) << "\n";
  WriteResolvedConfig(config, config.output_dir, "evaluate");
  out << FormatMetricsTable(reports);
  log << "evaluate " << config.split << ": " << pairs.size() << " frames -> "
      << config.MetricsPath().string() << "\n";
  return reports;
}

}  // namespace schemadst
