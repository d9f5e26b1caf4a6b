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

#ifndef SCHEMADST_EXAMPLES_EXAMPLE_IO_H_
#define SCHEMADST_EXAMPLES_EXAMPLE_IO_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/examples/qa_example.h"

namespace schemadst {

// One line of the example stream: task, token_ids, segment_ids, label,
// loss_mask, keys (in that order).
std::string ExampleToJsonLine(const QAExample& example);
QAExample ExampleFromJsonLine(const std::string& line);

void WriteExamplesJsonl(const std::vector<QAExample>& examples, std::ostream& out);
void WriteExamplesJsonl(const std::vector<QAExample>& examples,
                        const std::filesystem::path& path);
std::vector<QAExample> ReadExamplesJsonl(const std::filesystem::path& path);

// True when the example counts as negative for its task: label 0, status
// none, or the no-span sentinel.
bool IsNegative(const QAExample& example);

struct ExampleStatistics {
  std::array<long, kNumTasks> counts{};
  std::array<long, kNumTasks> negatives{};

  long total() const;
  // Share of all examples per task, in percent.
  std::array<double, kNumTasks> TaskPercentages() const;
  // Negative share within each task, in percent (NaN for empty tasks).
  std::array<double, kNumTasks> NegativePercentages() const;
  nlohmann::ordered_json ToJson() const;
};

ExampleStatistics ComputeStatistics(const std::vector<QAExample>& examples);

}  // namespace schemadst

#endif  // SCHEMADST_EXAMPLES_EXAMPLE_IO_H_
