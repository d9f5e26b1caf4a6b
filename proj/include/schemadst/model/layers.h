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

#ifndef SCHEMADST_MODEL_LAYERS_H_
#define SCHEMADST_MODEL_LAYERS_H_

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "schemadst/common/random.h"
#include "schemadst/model/parameters.h"

// Building blocks with explicit backward passes. Activations are row-major
// (one row per token).

namespace schemadst {

// Embedding init. Linear layers use 1/sqrt(fan_in) instead: at toy widths a
// fixed 0.02 shrinks activations (and gradients) through the stacked heads.
inline constexpr double kInitStddev = 0.02;

template <typename T>
void InitNormal(Matrix<T>& m, Rng& rng, double stddev = kInitStddev) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = static_cast<T>(stddev * rng.Normal());
  }
}

template <typename T>
struct Linear {
  int weight = -1;  // in x out
  int bias = -1;    // 1 x out

  void Init(ParameterStore<T>& store, const std::string& prefix, int in, int out,
            Rng& rng) {
    weight = store.Add(prefix + ".weight", in, out);
    bias = store.Add(prefix + ".bias", 1, out);
    InitNormal(store.value(weight), rng, 1.0 / std::sqrt(static_cast<double>(in)));
  }

  Matrix<T> Forward(const ParameterStore<T>& store, const Matrix<T>& x) const {
    Matrix<T> y = x * store.value(weight);
    y.rowwise() += store.value(bias).row(0);
    return y;
  }

  Matrix<T> Backward(const ParameterStore<T>& store, const Matrix<T>& x,
                     const Matrix<T>& dy, Gradients<T>& grads) const {
    grads[weight].noalias() += x.transpose() * dy;
    grads[bias] += dy.colwise().sum();
    return dy * store.value(weight).transpose();
  }
};

template <typename T>
struct LayerNorm {
  static constexpr double kEps = 1e-6;
  int gamma = -1;
  int beta = -1;

  struct Cache {
    Matrix<T> normalized;
    std::vector<T> inv_std;
  };

  void Init(ParameterStore<T>& store, const std::string& prefix, int dim) {
    gamma = store.Add(prefix + ".gamma", 1, dim);
    beta = store.Add(prefix + ".beta", 1, dim);
    store.value(gamma).setOnes();
  }

  Matrix<T> Forward(const ParameterStore<T>& store, const Matrix<T>& x,
                    Cache* cache) const {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    Matrix<T> xhat(n, d);
    if (cache) cache->inv_std.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const T mean = x.row(i).mean();
      const auto centered = (x.row(i).array() - mean).matrix();
      const T var = centered.squaredNorm() / static_cast<T>(d);
      const T inv = T(1) / std::sqrt(var + static_cast<T>(kEps));
      xhat.row(i) = centered * inv;
      if (cache) cache->inv_std[i] = inv;
    }
    Matrix<T> y =
        (xhat.array().rowwise() * store.value(gamma).row(0).array()).matrix();
    y.rowwise() += store.value(beta).row(0);
    if (cache) cache->normalized = std::move(xhat);
    return y;
  }

  Matrix<T> Backward(const ParameterStore<T>& store, const Cache& cache,
                     const Matrix<T>& dy, Gradients<T>& grads) const {
    const Matrix<T>& xhat = cache.normalized;
    grads[gamma] += (dy.array() * xhat.array()).colwise().sum().matrix();
    grads[beta] += dy.colwise().sum();
    const Matrix<T> dxhat =
        (dy.array().rowwise() * store.value(gamma).row(0).array()).matrix();
    const T d = static_cast<T>(xhat.cols());
    Matrix<T> dx(dy.rows(), dy.cols());
    for (Eigen::Index i = 0; i < dy.rows(); ++i) {
      const T sum = dxhat.row(i).sum();
      const T dot = dxhat.row(i).dot(xhat.row(i));
      dx.row(i) = (cache.inv_std[i] / d) *
                  (d * dxhat.row(i).array() - sum - xhat.row(i).array() * dot).matrix();
    }
    return dx;
  }
};

// Exact (erf) GELU.
template <typename T>
Matrix<T> Gelu(const Matrix<T>& x) {
  return x.unaryExpr([](T v) {
    return static_cast<T>(0.5) * v * (T(1) + std::erf(v * static_cast<T>(std::numbers::sqrt2 / 2)));
  });
}

template <typename T>
Matrix<T> GeluBackward(const Matrix<T>& x, const Matrix<T>& dy) {
  const Matrix<T> slope = x.unaryExpr([](T v) {
    const T cdf = static_cast<T>(0.5) * (T(1) + std::erf(v * static_cast<T>(std::numbers::sqrt2 / 2)));
    const T pdf = std::exp(static_cast<T>(-0.5) * v * v) *
                  static_cast<T>(std::numbers::inv_sqrtpi / std::numbers::sqrt2);
    return cdf + v * pdf;
  });
  return (dy.array() * slope.array()).matrix();
}

template <typename T>
Matrix<T> TanhBackwardFromOutput(const Matrix<T>& y, const Matrix<T>& dy) {
  return (dy.array() * (T(1) - y.array().square())).matrix();
}

// Inverted dropout. An empty mask means "no dropout".
template <typename T>
Matrix<T> DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate, Rng* rng) {
  if (!rng || rate <= 0.0) return {};
  Matrix<T> mask(rows, cols);
  const T scale = static_cast<T>(1.0 / (1.0 - rate));
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng->Uniform() < rate ? T(0) : scale;
  }
  return mask;
}

template <typename T>
Matrix<T> ApplyMask(const Matrix<T>& x, const Matrix<T>& mask) {
  if (mask.size() == 0) return x;
  return (x.array() * mask.array()).matrix();
}

// Row-wise softmax, numerically stabilized.
template <typename T>
void SoftmaxRowsInPlace(Matrix<T>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const T max = m.row(i).maxCoeff();
    m.row(i) = (m.row(i).array() - max).exp().matrix();
    m.row(i) /= m.row(i).sum();
  }
}

// Scaled dot-product attention. With a match bias, each head adds a learned
// scalar times a fixed 0/1 pair matrix to its attention logits.
template <typename T>
struct MultiHeadAttention {
  Linear<T> query, key, value, output;
  int heads = 1;
  int match_bias = -1;  // 1 x heads, optional

  struct Cache {
    Matrix<T> input, q, k, v, context;
    std::vector<Matrix<T>> probs;  // one n x n matrix per head
  };

  void Init(ParameterStore<T>& store, const std::string& prefix, int dim, int num_heads,
            Rng& rng, bool with_match_bias = false) {
    if (dim % num_heads != 0) {
      throw ConfigError("hidden size " + std::to_string(dim) +
                        " not divisible by heads " + std::to_string(num_heads));
    }
    heads = num_heads;
    query.Init(store, prefix + ".query", dim, dim, rng);
    key.Init(store, prefix + ".key", dim, dim, rng);
    value.Init(store, prefix + ".value", dim, dim, rng);
    output.Init(store, prefix + ".output", dim, dim, rng);
    if (with_match_bias) {
      match_bias = store.Add(prefix + ".match_bias", 1, num_heads);
      store.value(match_bias).setConstant(T(kMatchBiasInit));
    }
  }

  static constexpr double kMatchBiasInit = 1.0;

  // `match` (n x n) is required when the match bias is enabled.
  Matrix<T> Forward(const ParameterStore<T>& store, const Matrix<T>& x, Cache* cache,
                    const Matrix<T>* match = nullptr) const {
    const Eigen::Index n = x.rows();
    const Eigen::Index dim = x.cols();
    const Eigen::Index dh = dim / heads;
    const T scale = T(1) / std::sqrt(static_cast<T>(dh));
    Matrix<T> q = query.Forward(store, x);
    Matrix<T> k = key.Forward(store, x);
    Matrix<T> v = value.Forward(store, x);
    Matrix<T> context(n, dim);
    std::vector<Matrix<T>> probs;
    if (cache) probs.reserve(heads);
    for (int h = 0; h < heads; ++h) {
      Matrix<T> p = (q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose()) * scale;
      if (match_bias >= 0) p += store.value(match_bias)(0, h) * *match;
      SoftmaxRowsInPlace(p);
      context.middleCols(h * dh, dh).noalias() = p * v.middleCols(h * dh, dh);
      if (cache) probs.push_back(std::move(p));
    }
    Matrix<T> out = output.Forward(store, context);
    if (cache) {
      cache->input = x;
      cache->q = std::move(q);
      cache->k = std::move(k);
      cache->v = std::move(v);
      cache->context = std::move(context);
      cache->probs = std::move(probs);
    }
    return out;
  }

  Matrix<T> Backward(const ParameterStore<T>& store, const Cache& cache,
                     const Matrix<T>& dout, Gradients<T>& grads,
                     const Matrix<T>* match = nullptr) const {
    const Eigen::Index n = cache.input.rows();
    const Eigen::Index dim = cache.input.cols();
    const Eigen::Index dh = dim / heads;
    const T scale = T(1) / std::sqrt(static_cast<T>(dh));
    const Matrix<T> dcontext = output.Backward(store, cache.context, dout, grads);
    Matrix<T> dq(n, dim), dk(n, dim), dv(n, dim);
    for (int h = 0; h < heads; ++h) {
      const Matrix<T>& p = cache.probs[h];
      const auto dctx = dcontext.middleCols(h * dh, dh);
      dv.middleCols(h * dh, dh).noalias() = p.transpose() * dctx;
      const Matrix<T> dp = dctx * cache.v.middleCols(h * dh, dh).transpose();
      Matrix<T> ds = p.array() * dp.array();
      const Eigen::Matrix<T, Eigen::Dynamic, 1> row_dot = ds.rowwise().sum();
      ds -= (p.array().colwise() * row_dot.array()).matrix();
      if (match_bias >= 0) grads[match_bias](0, h) += (ds.array() * match->array()).sum();
      ds *= scale;
      dq.middleCols(h * dh, dh).noalias() = ds * cache.k.middleCols(h * dh, dh);
      dk.middleCols(h * dh, dh).noalias() = ds.transpose() * cache.q.middleCols(h * dh, dh);
    }
    Matrix<T> dx = query.Backward(store, cache.input, dq, grads);
    dx += key.Backward(store, cache.input, dk, grads);
    dx += value.Backward(store, cache.input, dv, grads);
    return dx;
  }
};

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_LAYERS_H_
