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

#ifndef SCHEMADST_COMMON_ERROR_H_
#define SCHEMADST_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace schemadst {

// Base of every error raised by the library. The CLI maps the subclasses to
// distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (JSON syntax, wrong top-level layout).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid or infeasible configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An example that cannot be encoded within the sequence budget.
class UnbuildableExampleError : public Error {
 public:
  using Error::Error;
};

// Model inputs outside the supported domain (e.g. out-of-vocabulary ids).
class InputError : public Error {
 public:
  using Error::Error;
};

// Internal mismatch between predictions, schemas and states.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Predicted and gold frames do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Bad command-line usage or missing upstream artifacts.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace schemadst

#endif  // SCHEMADST_COMMON_ERROR_H_
