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

// Sensitivity analysis over a search memory: which hyperparameters moved
// the objective, by random-forest impurity importance and by linear
// correlation.

#ifndef MORLTUNE_ANALYSIS_H_
#define MORLTUNE_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morltune/hpo/study.h"

namespace morltune::analysis {

struct AnalysisDataset {
  // One entry per search-space parameter, in space order.
  std::vector<std::string> parameters;
  // Per parameter, the normalized value of every row (choice index scaled
  // to [0, 1] for categoricals).
  std::vector<std::vector<double>> parameter_columns;

  // Model features: numeric parameters as is, categoricals one-hot.
  std::vector<std::string> feature_names;
  std::vector<int> feature_parameter;
  std::vector<std::vector<double>> rows;

  std::vector<double> labels;
  std::vector<int64_t> trial_ids;

  int row_count() const { return static_cast<int>(labels.size()); }
};

// Completed trials only. Throws ConfigError with fewer than two.
AnalysisDataset BuildDataset(const hpo::SearchMemory& memory);
AnalysisDataset BuildDataset(const hpo::HyperparameterSpace& space,
                             std::span<const hpo::Trial> trials);

// Pearson correlation; nullopt when either side has zero variance.
std::optional<double> Pearson(std::span<const double> x, std::span<const double> y);
// Throws ConfigError for an unknown parameter.
std::optional<double> Correlation(const AnalysisDataset& data, const std::string& parameter);

struct ForestOptions {
  static constexpr int kMinRows = 10;

  int trees = 100;
  int max_depth = 6;
  int min_leaf = 2;
};

// Impurity-decrease importance per model feature, summed over a seeded
// regression forest and normalized to 1 (uniform when no split helps).
// Rows are put in a content-derived order first, so the result does not
// depend on trial order.
std::vector<double> FeatureImportances(const AnalysisDataset& data, uint64_t forest_seed,
                                       const ForestOptions& options = {});

struct ImportanceEntry {
  std::string parameter;
  double importance = 0.0;
  std::optional<double> correlation;
};

// Sorted by descending importance. Categorical one-hot importances are
// summed back into their parameter.
struct ImportanceReport {
  std::vector<ImportanceEntry> entries;
};

// Throws ConfigError with fewer than ForestOptions::kMinRows rows.
ImportanceReport RfImportance(const AnalysisDataset& data, uint64_t forest_seed,
                              const ForestOptions& options = {});

// CSV with header "parameter,importance,correlation"; empty correlation
// cells where undefined.
std::string ToCsv(const ImportanceReport& report);
// Aligned text table of the first `top_k` entries (all when top_k exceeds
// the entry count).
std::string RenderTable(const ImportanceReport& report, int top_k);

}  // namespace morltune::analysis

#endif  // MORLTUNE_ANALYSIS_H_
