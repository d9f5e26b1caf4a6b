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

#ifndef SCHEMADST_TRAIN_OPTIMIZER_H_
#define SCHEMADST_TRAIN_OPTIMIZER_H_

#include "schemadst/model/parameters.h"
#include "schemadst/train/train_config.h"

namespace schemadst {

// Global L2 norm over every gradient tensor.
template <typename T>
double GlobalNorm(const Gradients<T>& grads);

// Rescales by max_norm / norm when the global norm exceeds max_norm.
// Returns the norm before clipping.
template <typename T>
double ClipGlobalNorm(Gradients<T>& grads, double max_norm);

// Adam with bias correction and no weight decay.
template <typename T>
class Adam {
 public:
  Adam(const ParameterStore<T>& store, AdamConfig config);

  void Step(ParameterStore<T>& store, const Gradients<T>& grads, double lr);
  long steps() const { return steps_; }

 private:
  AdamConfig config_;
  Gradients<T> m_;
  Gradients<T> v_;
  long steps_ = 0;
};

extern template class Adam<float>;
extern template class Adam<double>;

}  // namespace schemadst

#endif  // SCHEMADST_TRAIN_OPTIMIZER_H_
