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

#ifndef SCHEMADST_MODEL_PARAMETERS_H_
#define SCHEMADST_MODEL_PARAMETERS_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "schemadst/common/error.h"

namespace schemadst {

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowVector = Eigen::Matrix<T, 1, Eigen::Dynamic>;

// Gradient buffers, index-aligned with a ParameterStore.
template <typename T>
using Gradients = std::vector<Matrix<T>>;

// Flat registry of named parameter tensors. Layers hold ids into it, so a
// model can be paired with any number of independent gradient buffers.
template <typename T>
class ParameterStore {
 public:
  int Add(std::string name, int rows, int cols) {
    for (const auto& existing : names_) {
      if (existing == name) throw ConfigError("duplicate parameter '" + name + "'");
    }
    names_.push_back(std::move(name));
    values_.push_back(Matrix<T>::Zero(rows, cols));
    return static_cast<int>(values_.size()) - 1;
  }

  int size() const { return static_cast<int>(values_.size()); }
  Matrix<T>& value(int id) { return values_[id]; }
  const Matrix<T>& value(int id) const { return values_[id]; }
  const std::string& name(int id) const { return names_[id]; }

  int Find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
      if (names_[i] == name) return i;
    }
    return -1;
  }

  Gradients<T> ZeroGradients() const {
    Gradients<T> grads;
    grads.reserve(values_.size());
    for (const auto& v : values_) grads.push_back(Matrix<T>::Zero(v.rows(), v.cols()));
    return grads;
  }

  long ParameterCount() const {
    long n = 0;
    for (const auto& v : values_) n += v.size();
    return n;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Matrix<T>> values_;
};

template <typename T>
void ZeroFill(Gradients<T>& grads) {
  for (auto& g : grads) g.setZero();
}

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_PARAMETERS_H_
