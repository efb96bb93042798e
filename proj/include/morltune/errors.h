/*
 * Copyright 2026 The morltune Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MORLTUNE_ERRORS_H_
#define MORLTUNE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace morltune {

// Vectors of different objective counts were combined.
class DimensionMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested computation exists but not for this input size or shape.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// User-supplied configuration (run config, env spec, hyperparameters) is
// malformed or violates a constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace morltune

#endif  // MORLTUNE_ERRORS_H_
