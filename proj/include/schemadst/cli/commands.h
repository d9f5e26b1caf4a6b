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

#ifndef SCHEMADST_CLI_COMMANDS_H_
#define SCHEMADST_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "schemadst/cli/run_config.h"
#include "schemadst/examples/tokenizer.h"
#include "schemadst/metrics/metrics.h"

namespace schemadst {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitRuntime = 4;

// Pipeline stages. Each writes its resolved config as <stage>_config.json
// next to its outputs and reports progress on `log`.
void CmdSynth(const RunConfig& config, std::ostream& log);
void CmdPreprocess(const RunConfig& config, std::ostream& log);
void CmdTrain(const RunConfig& config, std::ostream& log);
void CmdPredict(const RunConfig& config, std::ostream& log);
void CmdTrack(const RunConfig& config, std::ostream& log);
// Returns the strict and fuzzy reports; the table goes to `out`.
std::vector<MetricsReport> CmdEvaluate(const RunConfig& config, std::ostream& out,
                                       std::ostream& log);

// The vocabulary a run uses: the configured file, else <data_dir>/vocab.txt,
// else one built from the training split (saved to the configured path).
Vocabulary ResolveVocabulary(const RunConfig& config, std::ostream& log);

// Parses argv and runs one subcommand; returns the process exit code.
int RunCli(int argc, char** argv);
int RunCli(const std::vector<std::string>& args);

}  // namespace schemadst

#endif  // SCHEMADST_CLI_COMMANDS_H_
