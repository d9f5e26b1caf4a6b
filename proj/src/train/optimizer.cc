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

#include "schemadst/train/optimizer.h"

#include <cmath>

namespace schemadst {

template <typename T>
double GlobalNorm(const Gradients<T>& grads) {
  double sum = 0.0;
  for (const auto& g : grads) sum += g.template cast<double>().squaredNorm();
  return std::sqrt(sum);
}

template <typename T>
double ClipGlobalNorm(Gradients<T>& grads, double max_norm) {
  const double norm = GlobalNorm(grads);
  if (norm > max_norm) {
    const T scale = static_cast<T>(max_norm / norm);
    for (auto& g : grads) g *= scale;
  }
  return norm;
}

template <typename T>
Adam<T>::Adam(const ParameterStore<T>& store, AdamConfig config)
    : config_(config), m_(store.ZeroGradients()), v_(store.ZeroGradients()) {}

template <typename T>
void Adam<T>::Step(ParameterStore<T>& store, const Gradients<T>& grads, double lr) {
  ++steps_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
  const T b1 = static_cast<T>(config_.beta1);
  const T b2 = static_cast<T>(config_.beta2);
  const T step = static_cast<T>(lr / c1);
  const T inv_sqrt_c2 = static_cast<T>(1.0 / std::sqrt(c2));
  const T eps = static_cast<T>(config_.epsilon);
  for (int i = 0; i < store.size(); ++i) {
    auto& m = m_[i];
    auto& v = v_[i];
    const auto& g = grads[i];
    m = b1 * m + (T(1) - b1) * g;
    v = b2 * v + (T(1) - b2) * g.cwiseProduct(g);
    store.value(i).array() -=
        step * m.array() / ((v.array().sqrt() * inv_sqrt_c2) + eps);
  }
}

template double GlobalNorm(const Gradients<float>&);
template double GlobalNorm(const Gradients<double>&);
template double ClipGlobalNorm(Gradients<float>&, double);
template double ClipGlobalNorm(Gradients<double>&, double);
template class Adam<float>;
template class Adam<double>;

}  // namespace schemadst
