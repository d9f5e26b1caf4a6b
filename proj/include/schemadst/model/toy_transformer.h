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

#ifndef SCHEMADST_MODEL_TOY_TRANSFORMER_H_
#define SCHEMADST_MODEL_TOY_TRANSFORMER_H_

#include <vector>

#include "schemadst/model/encoder.h"
#include "schemadst/model/layers.h"

namespace schemadst {

struct ToyTransformerConfig {
  int vocab_size = 0;
  int max_positions = 128;
  int layers = 2;
  int hidden = 64;
  int heads = 4;
  int feed_forward = 256;
  double dropout = 0.1;
  // Normalize before each sublayer (plus once after the last block) instead
  // of after each residual sum.
  bool pre_norm = true;
  // Give every attention head a learned bias toward positions in the other
  // segment that hold the same token.
  bool match_bias = false;
  // Add a learned embedding to tokens whose word also occurs in the other
  // segment.
  bool exact_match = true;

  nlohmann::json ToJson() const;
  static ToyTransformerConfig FromJson(const nlohmann::json& j);
};

// Small transformer: token + position + segment embeddings, then `layers`
// blocks of self-attention and a GELU feed-forward (post-LN or pre-LN), then
// a tanh pooler over [CLS].
template <typename T>
class ToyTransformerEncoder final : public Encoder<T> {
 public:
  ToyTransformerEncoder(ParameterStore<T>& store, const ToyTransformerConfig& config,
                        Rng& rng);

  int hidden_size() const override { return config_.hidden; }
  int vocab_size() const override { return config_.vocab_size; }
  int max_positions() const override { return config_.max_positions; }

  EncoderOutput<T> Forward(const ParameterStore<T>& store, const EncoderInput& input,
                           Rng* dropout_rng,
                           std::unique_ptr<EncoderCache>* cache) const override;
  void Backward(const ParameterStore<T>& store, const EncoderCache& cache,
                const Matrix<T>& d_token_states, const RowVector<T>& d_pooled,
                Gradients<T>& grads) const override;
  nlohmann::json Describe() const override;

  const ToyTransformerConfig& config() const { return config_; }

 private:
  struct Block {
    MultiHeadAttention<T> attention;
    LayerNorm<T> attention_norm;
    Linear<T> ffn_in;
    Linear<T> ffn_out;
    LayerNorm<T> ffn_norm;
  };
  struct BlockCache;
  struct Cache;

  ToyTransformerConfig config_;
  int token_embedding_ = -1;
  int position_embedding_ = -1;
  int segment_embedding_ = -1;
  int match_embedding_ = -1;  // exact_match only
  LayerNorm<T> embedding_norm_;
  std::vector<Block> blocks_;
  LayerNorm<T> final_norm_;  // pre-LN only
  Linear<T> pooler_;
};

extern template class ToyTransformerEncoder<float>;
extern template class ToyTransformerEncoder<double>;

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_TOY_TRANSFORMER_H_
