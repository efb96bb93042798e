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

#include "morltune/hpo/optimizers.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "morltune/errors.h"

namespace morltune::hpo {
namespace {

constexpr int64_t kMaxGridSize = 1'000'000;
constexpr int kMaxTruncationTries = 64;

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Parzen estimate on [0, 1]: truncated Gaussians at `centers` plus one
// uniform component of the same weight.
struct Parzen {
  std::vector<double> centers;
  double bandwidth = 1.0;

  static Parzen Fit(std::vector<double> centers, double min_bandwidth) {
    Parzen p;
    const double n = static_cast<double>(centers.size());
    double sd = 0.5;
    if (centers.size() >= 2) {
      const double mean = std::accumulate(centers.begin(), centers.end(), 0.0) / n;
      double ss = 0.0;
      for (double c : centers) ss += (c - mean) * (c - mean);
      sd = std::sqrt(ss / (n - 1.0));
    }
    // Scott's rule, floored at 1 / min(100, n + 1) of the unit range so a
    // collapsed good set keeps exploring.
    const double floor = std::max(min_bandwidth, 1.0 / std::min(100.0, n + 1.0));
    p.bandwidth = centers.empty() ? 1.0 : std::clamp(1.06 * sd * std::pow(n, -0.2), floor, 1.0);
    p.centers = std::move(centers);
    return p;
  }

  double Density(double x) const {
    double total = 1.0;  // uniform component
    for (double c : centers) {
      const double z = (x - c) / bandwidth;
      const double mass = NormalCdf((1.0 - c) / bandwidth) - NormalCdf(-c / bandwidth);
      total += std::exp(-0.5 * z * z) / (bandwidth * std::sqrt(2.0 * M_PI) * mass);
    }
    return total / (centers.size() + 1.0);
  }

  double Sample(Rng& rng) const {
    const auto k = rng.UniformInt(centers.size() + 1);
    if (k == centers.size()) return rng.Uniform();
    for (int t = 0; t < kMaxTruncationTries; ++t) {
      const double x = centers[k] + bandwidth * rng.Normal();
      if (x >= 0.0 && x <= 1.0) return x;
    }
    return std::clamp(centers[k], 0.0, 1.0);
  }
};

// Add-one smoothed frequencies over categorical choices.
struct Frequencies {
  std::vector<double> probs;

  static Frequencies Fit(const std::vector<int>& picks, int choice_count) {
    Frequencies f;
    f.probs.assign(choice_count, 1.0);
    for (int p : picks) f.probs[p] += 1.0;
    const double total = static_cast<double>(picks.size() + choice_count);
    for (auto& p : f.probs) p /= total;
    return f;
  }

  int Sample(Rng& rng) const {
    double u = rng.Uniform();
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      if (u < probs[i]) return static_cast<int>(i);
      u -= probs[i];
    }
    return static_cast<int>(probs.size()) - 1;
  }
};

int ChoiceIndex(const ParamSpec& p, double u) {
  return static_cast<int>(std::nearbyint(u * (p.choices.size() - 1)));
}

}  // namespace

std::string ToString(TrialStatus status) {
  switch (status) {
    case TrialStatus::kCompleted: return "completed";
    case TrialStatus::kFailed: return "failed";
    case TrialStatus::kInvalid: return "invalid";
  }
  return "unknown";
}

TrialStatus ParseTrialStatus(const std::string& text) {
  if (text == "completed") return TrialStatus::kCompleted;
  if (text == "failed") return TrialStatus::kFailed;
  if (text == "invalid") return TrialStatus::kInvalid;
  throw ConfigError("unknown trial status '" + text + "'");
}

GridSearch::GridSearch(HyperparameterSpace space, uint64_t seed, int levels)
    : space_(std::move(space)) {
  if (levels < 2) throw ConfigError("grid search needs at least 2 levels");
  int64_t total = 1;
  for (const auto& p : space_.params()) {
    std::vector<double> axis;
    const int n = p.kind == ParamKind::kCategorical ? static_cast<int>(p.choices.size())
                                                    : levels;
    for (int i = 0; i < n; ++i) axis.push_back(n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
    total *= n;
    if (total > kMaxGridSize) throw ConfigError("grid is too large to enumerate");
    axes_.push_back(std::move(axis));
  }
  order_.resize(total);
  std::iota(order_.begin(), order_.end(), 0);
  Rng rng(seed);
  for (int64_t i = total - 1; i > 0; --i) {
    std::swap(order_[i], order_[rng.UniformInt(static_cast<uint64_t>(i) + 1)]);
  }
}

Config GridSearch::Propose() {
  int64_t code = order_[next_ % grid_size()];
  ++next_;
  std::vector<double> u(axes_.size());
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const auto n = static_cast<int64_t>(axes_[d].size());
    u[d] = axes_[d][code % n];
    code /= n;
  }
  return space_.Denormalize(u);
}

DensityModelSearch::DensityModelSearch(HyperparameterSpace space, uint64_t seed,
                                       DensityModelOptions options)
    : space_(std::move(space)),
      options_(options),
      startup_(space_, seed),
      rng_(MixSeed({seed, 0x64656e73ull})) {
  if (!(options_.good_fraction > 0.0 && options_.good_fraction < 1.0) ||
      options_.candidates < 1 || options_.startup_trials < 1) {
    throw ConfigError("invalid density-model options");
  }
}

void DensityModelSearch::Observe(const Config& config, double objective,
                                 TrialStatus status) {
  observations_.push_back({space_.Normalize(config), objective});
  if (status == TrialStatus::kCompleted) ++completed_;
}

Config DensityModelSearch::Propose() {
  if (completed_ < options_.startup_trials) return startup_.Propose();

  std::vector<std::size_t> rank(observations_.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return observations_[a].objective > observations_[b].objective;
  });
  const auto n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(options_.good_fraction * rank.size())));

  const int dims = space_.size();
  std::vector<Parzen> good_num(dims), bad_num(dims);
  std::vector<Frequencies> good_cat(dims), bad_cat(dims);
  for (int d = 0; d < dims; ++d) {
    const ParamSpec& p = space_.params()[d];
    std::vector<double> good, bad;
    for (std::size_t r = 0; r < rank.size(); ++r) {
      (r < n_good ? good : bad).push_back(observations_[rank[r]].u[d]);
    }
    if (p.kind == ParamKind::kCategorical) {
      auto to_index = [&](const std::vector<double>& us) {
        std::vector<int> out;
        for (double u : us) out.push_back(ChoiceIndex(p, u));
        return out;
      };
      const int k = static_cast<int>(p.choices.size());
      good_cat[d] = Frequencies::Fit(to_index(good), k);
      bad_cat[d] = Frequencies::Fit(to_index(bad), k);
    } else {
      // Integers keep at least one grid step of spread, so neighbouring
      // values stay reachable after rounding.
      const double floor = p.kind == ParamKind::kInteger
                               ? std::max(options_.min_bandwidth, 1.0 / (p.hi - p.lo))
                               : options_.min_bandwidth;
      good_num[d] = Parzen::Fit(std::move(good), floor);
      bad_num[d] = Parzen::Fit(std::move(bad), floor);
    }
  }

  Config best;
  double best_score = -INFINITY;
  bool best_valid = false;
  for (int c = 0; c < options_.candidates; ++c) {
    std::vector<double> u(dims);
    double score = 0.0;
    for (int d = 0; d < dims; ++d) {
      const ParamSpec& p = space_.params()[d];
      if (p.kind == ParamKind::kCategorical) {
        const int k = good_cat[d].Sample(rng_);
        u[d] = p.choices.size() == 1 ? 0.0 : static_cast<double>(k) / (p.choices.size() - 1);
        score += std::log(good_cat[d].probs[k]) - std::log(bad_cat[d].probs[k]);
      } else {
        // Snap to the representable value so the score sees what is run.
        u[d] = p.Normalize(p.Denormalize(good_num[d].Sample(rng_)));
        score += std::log(good_num[d].Density(u[d])) - std::log(bad_num[d].Density(u[d]));
      }
    }
    Config candidate = space_.Denormalize(u);
    const bool valid = space_.Validate(candidate);
    if ((valid && !best_valid) || (valid == best_valid && score > best_score)) {
      best = std::move(candidate);
      best_score = score;
      best_valid = valid;
    }
  }
  return best;
}

std::unique_ptr<Optimizer> MakeOptimizer(const std::string& name,
                                         const HyperparameterSpace& space, uint64_t seed) {
  if (name == "random") return std::make_unique<RandomSearch>(space, seed);
  if (name == "grid") return std::make_unique<GridSearch>(space, seed);
  if (name == "density") return std::make_unique<DensityModelSearch>(space, seed);
  throw ConfigError("unknown optimizer '" + name + "' (expected random, grid or density)");
}

}  // namespace morltune::hpo
