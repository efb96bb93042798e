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

// Black-box optimizers over a HyperparameterSpace. Optimizers only propose
// and learn; validity filtering and trial bookkeeping live in Study.

#ifndef MORLTUNE_HPO_OPTIMIZERS_H_
#define MORLTUNE_HPO_OPTIMIZERS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "morltune/hpo/space.h"
#include "morltune/rng.h"

namespace morltune::hpo {

enum class TrialStatus { kCompleted, kFailed, kInvalid };

std::string ToString(TrialStatus status);
TrialStatus ParseTrialStatus(const std::string& text);

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual std::string name() const = 0;
  // Next candidate. It may violate validity rules; callers resample.
  virtual Config Propose() = 0;
  virtual void Observe(const Config& config, double objective, TrialStatus status) = 0;
};

class RandomSearch : public Optimizer {
 public:
  RandomSearch(HyperparameterSpace space, uint64_t seed)
      : space_(std::move(space)), rng_(seed) {}

  std::string name() const override { return "random"; }
  Config Propose() override { return space_.Sample(rng_); }
  void Observe(const Config&, double, TrialStatus) override {}

 private:
  HyperparameterSpace space_;
  Rng rng_;
};

// Cycles through the full factorial of `levels` evenly spaced normalized
// positions per parameter (every choice for categoricals) in a seeded
// shuffled order.
class GridSearch : public Optimizer {
 public:
  GridSearch(HyperparameterSpace space, uint64_t seed, int levels = 3);

  std::string name() const override { return "grid"; }
  Config Propose() override;
  void Observe(const Config&, double, TrialStatus) override {}

  int64_t grid_size() const { return static_cast<int64_t>(order_.size()); }

 private:
  HyperparameterSpace space_;
  std::vector<std::vector<double>> axes_;
  std::vector<int64_t> order_;
  int64_t next_ = 0;
};

struct DensityModelOptions {
  // Fraction of observations treated as "good".
  double good_fraction = 0.25;
  int candidates = 24;
  // Completed trials before the model takes over from random sampling.
  int startup_trials = 10;
  double min_bandwidth = 0.02;
};

// Sequential model-based search: Parzen densities over the good and bad
// observations in normalized space, candidates drawn from the good density
// and ranked by the density ratio.
class DensityModelSearch : public Optimizer {
 public:
  DensityModelSearch(HyperparameterSpace space, uint64_t seed,
                     DensityModelOptions options = {});

  std::string name() const override { return "density"; }
  Config Propose() override;
  void Observe(const Config& config, double objective, TrialStatus status) override;

 private:
  struct Observation {
    std::vector<double> u;
    double objective;
  };

  HyperparameterSpace space_;
  DensityModelOptions options_;
  RandomSearch startup_;
  Rng rng_;
  std::vector<Observation> observations_;
  int completed_ = 0;
};

// "random", "grid" or "density". Throws ConfigError.
std::unique_ptr<Optimizer> MakeOptimizer(const std::string& name,
                                         const HyperparameterSpace& space, uint64_t seed);

}  // namespace morltune::hpo

#endif  // MORLTUNE_HPO_OPTIMIZERS_H_
