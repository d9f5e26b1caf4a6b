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

#include "schemadst/model/toy_transformer.h"

#include <string>

namespace schemadst {

void CheckEncoderInput(const EncoderInput& input, int vocab_size, int max_positions) {
  if (input.valid_length <= 0 ||
      input.valid_length > static_cast<int>(input.token_ids.size()) ||
      input.valid_length > static_cast<int>(input.segment_ids.size())) {
    throw InputError("valid_length " + std::to_string(input.valid_length) +
                     " inconsistent with input of " +
                     std::to_string(input.token_ids.size()) + " tokens");
  }
  if (input.valid_length > max_positions) {
    throw InputError("input of " + std::to_string(input.valid_length) +
                     " tokens exceeds " + std::to_string(max_positions) + " positions");
  }
  for (int i = 0; i < input.valid_length; ++i) {
    const int id = input.token_ids[i];
    if (id < 0 || id >= vocab_size) {
      throw InputError("token id " + std::to_string(id) + " at position " +
                       std::to_string(i) + " outside vocabulary of " +
                       std::to_string(vocab_size));
    }
    if (input.segment_ids[i] != 0 && input.segment_ids[i] != 1) {
      throw InputError("segment id must be 0 or 1");
    }
  }
}

nlohmann::json ToyTransformerConfig::ToJson() const {
  return {{"type", "toy_transformer"}, {"vocab_size", vocab_size},
          {"max_positions", max_positions}, {"layers", layers},
          {"hidden", hidden}, {"heads", heads},
          {"feed_forward", feed_forward}, {"dropout", dropout},
          {"pre_norm", pre_norm}, {"match_bias", match_bias},
          {"exact_match", exact_match}};
}

ToyTransformerConfig ToyTransformerConfig::FromJson(const nlohmann::json& j) {
  ToyTransformerConfig c;
  c.vocab_size = j.value("vocab_size", c.vocab_size);
  c.max_positions = j.value("max_positions", c.max_positions);
  c.layers = j.value("layers", c.layers);
  c.hidden = j.value("hidden", c.hidden);
  c.heads = j.value("heads", c.heads);
  c.feed_forward = j.value("feed_forward", c.feed_forward);
  c.dropout = j.value("dropout", c.dropout);
  c.pre_norm = j.value("pre_norm", c.pre_norm);
  c.match_bias = j.value("match_bias", c.match_bias);
  c.exact_match = j.value("exact_match", c.exact_match);
  return c;
}

namespace {

// 1 where positions i and j lie in different segments and hold the same
// token. [CLS] and each segment's closing [SEP] never match.
template <typename T>
Matrix<T> SameTokenMatrix(const EncoderInput& input) {
  const int n = input.valid_length;
  std::vector<bool> eligible(n, true);
  eligible[0] = false;
  for (int i = 0; i < n; ++i) {
    if (i + 1 == n || input.segment_ids[i + 1] != input.segment_ids[i]) eligible[i] = false;
  }
  Matrix<T> m = Matrix<T>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!eligible[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (eligible[j] && input.segment_ids[i] != input.segment_ids[j] &&
          input.token_ids[i] == input.token_ids[j]) {
        m(i, j) = T(1);
      }
    }
  }
  return m;
}

}  // namespace

template <typename T>
struct ToyTransformerEncoder<T>::BlockCache {
  typename MultiHeadAttention<T>::Cache attention;
  Matrix<T> attention_dropout;
  typename LayerNorm<T>::Cache attention_norm;
  Matrix<T> after_attention;  // feed-forward input
  Matrix<T> ffn_hidden_pre;   // before GELU
  Matrix<T> ffn_hidden;       // after GELU
  Matrix<T> ffn_dropout;
  typename LayerNorm<T>::Cache ffn_norm;
};

template <typename T>
struct ToyTransformerEncoder<T>::Cache : EncoderCache {
  std::vector<int> token_ids;
  std::vector<int> segment_ids;
  std::vector<bool> matched;
  Matrix<T> match;
  typename LayerNorm<T>::Cache embedding_norm;
  Matrix<T> embedding_dropout;
  std::vector<BlockCache> blocks;
  typename LayerNorm<T>::Cache final_norm;
  RowVector<T> cls_state;
  RowVector<T> pooled;
};

template <typename T>
ToyTransformerEncoder<T>::ToyTransformerEncoder(ParameterStore<T>& store,
                                                const ToyTransformerConfig& config,
                                                Rng& rng)
    : config_(config) {
  if (config.vocab_size <= 0 || config.layers < 1 || config.hidden < 1 ||
      config.feed_forward < 1 || config.max_positions < 3 || config.dropout < 0 ||
      config.dropout >= 1) {
    throw ConfigError("invalid toy transformer configuration");
  }
  token_embedding_ = store.Add("encoder.embeddings.token", config.vocab_size, config.hidden);
  position_embedding_ =
      store.Add("encoder.embeddings.position", config.max_positions, config.hidden);
  segment_embedding_ = store.Add("encoder.embeddings.segment", 2, config.hidden);
  InitNormal(store.value(token_embedding_), rng);
  InitNormal(store.value(position_embedding_), rng);
  InitNormal(store.value(segment_embedding_), rng);
  if (config.exact_match) {
    match_embedding_ = store.Add("encoder.embeddings.exact_match", 1, config.hidden);
    InitNormal(store.value(match_embedding_), rng);
  }
  embedding_norm_.Init(store, "encoder.embeddings.norm", config.hidden);
  blocks_.resize(config.layers);
  for (int l = 0; l < config.layers; ++l) {
    const std::string prefix = "encoder.layer" + std::to_string(l);
    Block& block = blocks_[l];
    block.attention.Init(store, prefix + ".attention", config.hidden, config.heads, rng,
                         config.match_bias);
    block.attention_norm.Init(store, prefix + ".attention_norm", config.hidden);
    block.ffn_in.Init(store, prefix + ".ffn_in", config.hidden, config.feed_forward, rng);
    block.ffn_out.Init(store, prefix + ".ffn_out", config.feed_forward, config.hidden, rng);
    block.ffn_norm.Init(store, prefix + ".ffn_norm", config.hidden);
  }
  if (config.pre_norm) final_norm_.Init(store, "encoder.final_norm", config.hidden);
  pooler_.Init(store, "encoder.pooler", config.hidden, config.hidden, rng);
}

template <typename T>
EncoderOutput<T> ToyTransformerEncoder<T>::Forward(
    const ParameterStore<T>& store, const EncoderInput& input, Rng* dropout_rng,
    std::unique_ptr<EncoderCache>* cache_out) const {
  CheckEncoderInput(input, config_.vocab_size, config_.max_positions);
  const int n = input.valid_length;
  const int d = config_.hidden;
  std::unique_ptr<Cache> cache;
  if (cache_out) {
    cache = std::make_unique<Cache>();
    cache->token_ids.assign(input.token_ids.begin(), input.token_ids.begin() + n);
    cache->segment_ids.assign(input.segment_ids.begin(), input.segment_ids.begin() + n);
    cache->blocks.resize(blocks_.size());
  }

  Matrix<T> match;
  if (config_.match_bias || config_.exact_match) match = SameTokenMatrix<T>(input);
  const Matrix<T>* match_ptr = config_.match_bias ? &match : nullptr;
  std::vector<bool> matched;
  if (config_.exact_match) {
    matched.resize(n);
    for (int i = 0; i < n; ++i) matched[i] = match.row(i).sum() > T(0);
  }

  Matrix<T> x(n, d);
  const auto& tokens = store.value(token_embedding_);
  const auto& positions = store.value(position_embedding_);
  const auto& segments = store.value(segment_embedding_);
  for (int i = 0; i < n; ++i) {
    x.row(i) = tokens.row(input.token_ids[i]) + positions.row(i) +
               segments.row(input.segment_ids[i]);
    if (config_.exact_match && matched[i]) x.row(i) += store.value(match_embedding_).row(0);
  }
  x = embedding_norm_.Forward(store, x, cache ? &cache->embedding_norm : nullptr);
  Matrix<T> mask = DropoutMask<T>(n, d, config_.dropout, dropout_rng);
  x = ApplyMask(x, mask);
  if (cache) cache->embedding_dropout = std::move(mask);

  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    const Block& block = blocks_[l];
    BlockCache* bc = cache ? &cache->blocks[l] : nullptr;
    if (config_.pre_norm) {
      // x + drop(attn(LN(x))), then h + drop(ffn(LN(h))).
      Matrix<T> attended = block.attention.Forward(
          store, block.attention_norm.Forward(store, x, bc ? &bc->attention_norm : nullptr),
          bc ? &bc->attention : nullptr, match_ptr);
      mask = DropoutMask<T>(n, d, config_.dropout, dropout_rng);
      attended = ApplyMask(attended, mask);
      if (bc) bc->attention_dropout = std::move(mask);
      x += attended;
      Matrix<T> normed = block.ffn_norm.Forward(store, x, bc ? &bc->ffn_norm : nullptr);
      Matrix<T> pre = block.ffn_in.Forward(store, normed);
      Matrix<T> act = Gelu(pre);
      Matrix<T> ffn = block.ffn_out.Forward(store, act);
      mask = DropoutMask<T>(n, d, config_.dropout, dropout_rng);
      x += ApplyMask(ffn, mask);
      if (bc) {
        bc->ffn_dropout = std::move(mask);
        bc->after_attention = std::move(normed);
        bc->ffn_hidden_pre = std::move(pre);
        bc->ffn_hidden = std::move(act);
      }
      continue;
    }
    Matrix<T> attended =
        block.attention.Forward(store, x, bc ? &bc->attention : nullptr, match_ptr);
    mask = DropoutMask<T>(n, d, config_.dropout, dropout_rng);
    attended = ApplyMask(attended, mask);
    if (bc) bc->attention_dropout = std::move(mask);
    Matrix<T> h = block.attention_norm.Forward(store, x + attended,
                                               bc ? &bc->attention_norm : nullptr);

    Matrix<T> pre = block.ffn_in.Forward(store, h);
    Matrix<T> act = Gelu(pre);
    Matrix<T> ffn = block.ffn_out.Forward(store, act);
    mask = DropoutMask<T>(n, d, config_.dropout, dropout_rng);
    ffn = ApplyMask(ffn, mask);
    x = block.ffn_norm.Forward(store, h + ffn, bc ? &bc->ffn_norm : nullptr);
    if (bc) {
      bc->ffn_dropout = std::move(mask);
      bc->after_attention = std::move(h);
      bc->ffn_hidden_pre = std::move(pre);
      bc->ffn_hidden = std::move(act);
    }
  }
  if (config_.pre_norm) {
    x = final_norm_.Forward(store, x, cache ? &cache->final_norm : nullptr);
  }
  if (cache) {
    cache->match = std::move(match);
    cache->matched = std::move(matched);
  }

  EncoderOutput<T> out;
  Matrix<T> cls = x.row(0);
  Matrix<T> pooled = pooler_.Forward(store, cls).array().tanh().matrix();
  out.pooled = pooled.row(0);
  out.token_states = std::move(x);
  if (cache) {
    cache->cls_state = cls.row(0);
    cache->pooled = out.pooled;
    *cache_out = std::move(cache);
  }
  return out;
}

template <typename T>
void ToyTransformerEncoder<T>::Backward(const ParameterStore<T>& store,
                                        const EncoderCache& base_cache,
                                        const Matrix<T>& d_token_states,
                                        const RowVector<T>& d_pooled,
                                        Gradients<T>& grads) const {
  const auto& cache = dynamic_cast<const Cache&>(base_cache);
  const Matrix<T>* match = config_.match_bias ? &cache.match : nullptr;
  Matrix<T> dx = d_token_states;
  {
    const Matrix<T> pooled = cache.pooled;
    const Matrix<T> dpre = TanhBackwardFromOutput<T>(pooled, Matrix<T>(d_pooled));
    const Matrix<T> cls = cache.cls_state;
    dx.row(0) += pooler_.Backward(store, cls, dpre, grads).row(0);
  }
  if (config_.pre_norm) {
    dx = final_norm_.Backward(store, cache.final_norm, dx, grads);
  }
  for (int l = static_cast<int>(blocks_.size()) - 1; l >= 0; --l) {
    const Block& block = blocks_[l];
    const BlockCache& bc = cache.blocks[l];
    if (config_.pre_norm) {
      // x_out = h + drop(ffn(LN(h))), h = x + drop(attn(LN(x)))
      Matrix<T> dffn = ApplyMask(dx, bc.ffn_dropout);
      Matrix<T> dact = block.ffn_out.Backward(store, bc.ffn_hidden, dffn, grads);
      Matrix<T> dpre = GeluBackward(bc.ffn_hidden_pre, dact);
      Matrix<T> dnormed = block.ffn_in.Backward(store, bc.after_attention, dpre, grads);
      dx += block.ffn_norm.Backward(store, bc.ffn_norm, dnormed, grads);
      Matrix<T> dattn = ApplyMask(dx, bc.attention_dropout);
      Matrix<T> dnormed2 = block.attention.Backward(store, bc.attention, dattn, grads, match);
      dx += block.attention_norm.Backward(store, bc.attention_norm, dnormed2, grads);
      continue;
    }
    // x_out = LN(h + drop(ffn(h)))
    Matrix<T> dsum = block.ffn_norm.Backward(store, bc.ffn_norm, dx, grads);
    Matrix<T> dffn = ApplyMask(dsum, bc.ffn_dropout);
    Matrix<T> dact = block.ffn_out.Backward(store, bc.ffn_hidden, dffn, grads);
    Matrix<T> dpre = GeluBackward(bc.ffn_hidden_pre, dact);
    Matrix<T> dh = dsum + block.ffn_in.Backward(store, bc.after_attention, dpre, grads);
    // h = LN(x + drop(attn(x)))
    Matrix<T> dsum2 = block.attention_norm.Backward(store, bc.attention_norm, dh, grads);
    Matrix<T> dattn = ApplyMask(dsum2, bc.attention_dropout);
    dx = dsum2 + block.attention.Backward(store, bc.attention, dattn, grads, match);
  }
  dx = ApplyMask(dx, cache.embedding_dropout);
  dx = embedding_norm_.Backward(store, cache.embedding_norm, dx, grads);
  for (std::size_t i = 0; i < cache.token_ids.size(); ++i) {
    grads[token_embedding_].row(cache.token_ids[i]) += dx.row(i);
    grads[position_embedding_].row(i) += dx.row(i);
    grads[segment_embedding_].row(cache.segment_ids[i]) += dx.row(i);
    if (config_.exact_match && cache.matched[i]) grads[match_embedding_].row(0) += dx.row(i);
  }
}

template <typename T>
nlohmann::json ToyTransformerEncoder<T>::Describe() const {
  return config_.ToJson();
}

template class ToyTransformerEncoder<float>;
template class ToyTransformerEncoder<double>;

}  // namespace schemadst
