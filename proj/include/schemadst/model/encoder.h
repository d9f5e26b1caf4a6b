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

#ifndef SCHEMADST_MODEL_ENCODER_H_
#define SCHEMADST_MODEL_ENCODER_H_

#include <memory>
#include <span>

#include <nlohmann/json.hpp>

#include "schemadst/common/random.h"
#include "schemadst/model/parameters.h"

namespace schemadst {

struct EncoderInput {
  std::span<const int> token_ids;
  std::span<const int> segment_ids;
  int valid_length = 0;  // positions at or beyond this are padding
};

template <typename T>
struct EncoderOutput {
  Matrix<T> token_states;  // valid_length x hidden
  RowVector<T> pooled;     // summary of [CLS]
};

// Opaque per-example activations kept for the backward pass.
struct EncoderCache {
  virtual ~EncoderCache() = default;
};

// The one encoder shared by every task head. Any implementation that
// registers its weights in the model's ParameterStore and supplies a
// backward pass can replace the default toy transformer.
template <typename T>
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual int hidden_size() const = 0;
  virtual int vocab_size() const = 0;
  virtual int max_positions() const = 0;

  // Training mode when `dropout_rng` is non-null. Fills `cache` when given.
  // Only the first valid_length positions are read.
  virtual EncoderOutput<T> Forward(const ParameterStore<T>& store,
                                   const EncoderInput& input, Rng* dropout_rng,
                                   std::unique_ptr<EncoderCache>* cache) const = 0;

  // Accumulates parameter gradients for upstream gradients w.r.t. the token
  // states and the pooled state.
  virtual void Backward(const ParameterStore<T>& store, const EncoderCache& cache,
                        const Matrix<T>& d_token_states, const RowVector<T>& d_pooled,
                        Gradients<T>& grads) const = 0;

  // Configuration needed to rebuild the encoder from a checkpoint.
  virtual nlohmann::json Describe() const = 0;
};

// Rejects out-of-vocabulary ids and over-long inputs.
void CheckEncoderInput(const EncoderInput& input, int vocab_size, int max_positions);

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_ENCODER_H_
