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

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "schemadst/cli/commands.h"
#include "schemadst/common/error.h"

namespace schemadst {
namespace {

// Command-line values; unset ones leave the config file (or defaults) alone.
struct Overrides {
  std::string config;
  std::optional<std::string> data_dir, output_dir, vocab, checkpoint, split;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers, max_seq_len, epochs, batch_size, dialogues;
  std::optional<double> learning_rate;
  std::optional<bool> balance;
  bool normalize_names = false;
  bool fuzzy_match = false;
  bool oracle = false;
};

void AddCommonOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run config file");
  cmd->add_option("--data-dir", o.data_dir,
                  std::string("SGD-layout data directory (default: $") + kDataRootEnv + ")");
  cmd->add_option("--output-dir", o.output_dir, "directory for all stage outputs");
  cmd->add_option("--vocab", o.vocab, "vocabulary file (default: <output-dir>/vocab.txt)");
  cmd->add_option("--checkpoint", o.checkpoint,
                  "model checkpoint (default: <output-dir>/model.ckpt)");
  cmd->add_option("--split", o.split, "split to predict/track/evaluate (default: dev)");
  cmd->add_option("--seed", o.seed, "seed for every random choice of the run");
  cmd->add_option("--workers", o.workers, "inference threads (default 1)");
  cmd->add_option("--max-seq-len", o.max_seq_len, "model input length in tokens");
  cmd->add_flag("--balance,!--no-balance", o.balance,
                "cap STATUS negatives per (service, slot) (default on)");
  cmd->add_flag("--normalize-names", o.normalize_names,
                "render identifiers and numeric values as words in model input");
  cmd->add_flag("--fuzzy-match", o.fuzzy_match,
                "make fuzzy value matching the primary evaluation mode");
}

RunConfig Resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::Load(o.config);
  if (o.data_dir) c.data_dir = *o.data_dir;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.vocab) c.vocab = *o.vocab;
  if (o.checkpoint) c.checkpoint = *o.checkpoint;
  if (o.split) c.split = *o.split;
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (o.max_seq_len) c.examples.max_seq_len = *o.max_seq_len;
  if (o.balance) c.examples.balance = *o.balance;
  if (o.normalize_names) c.examples.normalize_names = true;
  if (o.fuzzy_match) c.fuzzy_match = true;
  if (o.oracle) c.oracle = true;
  if (o.epochs) c.train.epochs = *o.epochs;
  if (o.batch_size) c.train.batch_size = *o.batch_size;
  if (o.learning_rate) c.train.learning_rate = *o.learning_rate;
  if (o.dialogues) c.synth.n_dialogues = *o.dialogues;
  c.Finalize();
  return c;
}

}  // namespace

int RunCli(int argc, char** argv) {
  CLI::App app{"Schema-guided dialogue state tracking as multi-task question answering"};
  app.require_subcommand(1);
  Overrides o;

  auto* synth = app.add_subcommand("synth", "generate a synthetic SGD-format corpus");
  auto* preprocess =
      app.add_subcommand("preprocess", "build QA example JSONL and dataset statistics");
  auto* train = app.add_subcommand("train", "train the NLU model");
  auto* predict = app.add_subcommand("predict", "per-turn NLU predictions as JSONL");
  auto* track = app.add_subcommand("track", "fold predictions into dialogue states");
  auto* evaluate = app.add_subcommand("evaluate", "score tracked states against gold");
  for (auto* cmd : {synth, preprocess, train, predict, track, evaluate}) {
    AddCommonOptions(cmd, o);
  }
  synth->add_option("--dialogues", o.dialogues, "number of dialogues to generate");
  train->add_option("--epochs", o.epochs, "training epochs");
  train->add_option("--batch-size", o.batch_size, "examples per optimizer step");
  train->add_option("--learning-rate", o.learning_rate, "peak learning rate");
  predict->add_flag("--oracle", o.oracle, "emit gold labels as predictions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig config = Resolve(o);
    if (*synth) CmdSynth(config, std::cerr);
    if (*preprocess) CmdPreprocess(config, std::cerr);
    if (*train) CmdTrain(config, std::cerr);
    if (*predict) CmdPredict(config, std::cerr);
    if (*track) CmdTrack(config, std::cerr);
    if (*evaluate) CmdEvaluate(config, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int RunCli(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  for (auto& a : storage) argv.push_back(a.data());
  return RunCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace schemadst
