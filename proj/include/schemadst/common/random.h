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

#ifndef SCHEMADST_COMMON_RANDOM_H_
#define SCHEMADST_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace schemadst {

// Seeded generator with portable derived draws. The standard distributions
// are implementation-defined, so everything that feeds a golden file or a
// determinism contract goes through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double Uniform();

  // Standard normal via Box-Muller.
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = Below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Mixes two values into a fresh seed (splitmix64 finalizer).
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

}  // namespace schemadst

#endif  // SCHEMADST_COMMON_RANDOM_H_
