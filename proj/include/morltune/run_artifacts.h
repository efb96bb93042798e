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

// On-disk layout of a run directory:
//
//   run.json                   what produced the directory
//   memory.json                search memory (trials, space, metadata)
//   trials.csv                 one row per trial
//   best_config.json           best completed trial
//   analysis.csv               parameter, importance, correlation
//   validation/curves.csv      step, metric, mean, ci_low, ci_high, seed_<s>...
//   validation/fronts/<s>.json final front of validation seed s
//
// Validation-only runs carry run.json and validation/ alone.

#ifndef MORLTUNE_RUN_ARTIFACTS_H_
#define MORLTUNE_RUN_ARTIFACTS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "morltune/hpo/search.h"
#include "morltune/hpo/study.h"

namespace morltune::artifacts {

namespace fs = std::filesystem;

// Writes through a temporary file and a rename; creates parent directories.
void WriteText(const fs::path& path, const std::string& content);
// Throws ConfigError when the file cannot be read.
std::string ReadText(const fs::path& path);

std::string TrialsCsvHeader(const hpo::SearchMemory& memory);
std::string TrialsCsv(const hpo::SearchMemory& memory);
void WriteSearchArtifacts(const fs::path& run_dir, const hpo::SearchMemory& memory);
void WriteBestConfig(const fs::path& run_dir, const hpo::Trial& best);

std::string CurvesCsvHeader(const std::vector<uint64_t>& seeds);
std::string CurvesCsv(const hpo::ValidationReport& report);
void WriteValidation(const fs::path& run_dir, const hpo::ValidationReport& report);

struct CurveRow {
  int64_t step = 0;
  std::string metric;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> per_seed;
};

struct CurvesTable {
  std::vector<uint64_t> seeds;
  std::vector<CurveRow> rows;

  // Rows of the largest step.
  std::vector<CurveRow> FinalRows() const;
};

// Throws ConfigError on a missing or malformed file.
CurvesTable ReadCurves(const fs::path& path);

// Problems found in a run directory; empty when it is well formed.
std::vector<std::string> CheckRunDirectory(const fs::path& run_dir);

}  // namespace morltune::artifacts

#endif  // MORLTUNE_RUN_ARTIFACTS_H_
