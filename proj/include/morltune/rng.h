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

#ifndef MORLTUNE_RNG_H_
#define MORLTUNE_RNG_H_

#include <cstdint>
#include <initializer_list>

namespace morltune {

// Mixes a list of integers into a single 64-bit seed. Used to derive
// independent streams (per tree, per seed, per trial) from a root seed.
uint64_t MixSeed(std::initializer_list<uint64_t> parts);

// Counter-based generator: the i-th draw is a pure function of (key, i), so
// the sequence is identical on every platform and a generator can be copied
// or forked without shared state.
//
// Only integer arithmetic is used to produce uniform draws. Normal and
// exponential draws go through libm and are reproducible on a given platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(MixSeed({seed})) {}

  uint64_t NextU64();

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform on {0, ..., n - 1}. n must be > 0.
  uint64_t UniformInt(uint64_t n);

  double Normal();
  // Rate-1 exponential.
  double Exponential();

  // Independent generator keyed by (this key, stream).
  Rng Fork(uint64_t stream) const;

  uint64_t counter() const { return counter_; }

 private:
  struct RawKey {};
  Rng(RawKey, uint64_t key) : key_(key) {}

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace morltune

#endif  // MORLTUNE_RNG_H_
