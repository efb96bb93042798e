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

// Hyperparameter search spaces: typed parameters with optional log
// transforms, cross-parameter validity rules and the [0, 1] embedding used
// by the optimizers and the sensitivity analysis.

#ifndef MORLTUNE_HPO_SPACE_H_
#define MORLTUNE_HPO_SPACE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "morltune/rng.h"
#include "morltune/solver.h"

namespace morltune::hpo {

enum class ParamKind { kFloatLinear, kFloatLog, kInteger, kIntegerLog, kCategorical };

std::string ToString(ParamKind kind);
// "float", "float-linear", "float-log", "integer", "int", "integer-log",
// "categorical".
ParamKind ParseParamKind(const std::string& text);

using ParamValue = std::variant<double, int64_t, std::string>;
using Config = std::map<std::string, ParamValue>;

std::string FormatValue(const ParamValue& value);

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kFloatLinear;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::string> choices;

  static ParamSpec Float(std::string name, double lo, double hi, bool log = false);
  static ParamSpec Integer(std::string name, int64_t lo, int64_t hi, bool log = false);
  static ParamSpec Categorical(std::string name, std::vector<std::string> choices);

  bool is_integer() const {
    return kind == ParamKind::kInteger || kind == ParamKind::kIntegerLog;
  }
  bool is_log() const {
    return kind == ParamKind::kFloatLog || kind == ParamKind::kIntegerLog;
  }

  // Throws ConfigError on bad bounds or choices.
  void Check() const;
  bool Contains(const ParamValue& value) const;

  // Position in [0, 1] of the (log-)transformed domain. Categoricals map
  // choice i of n to i / (n - 1).
  double Normalize(const ParamValue& value) const;
  // Inverse of Normalize; integers and choices are rounded to the nearest.
  ParamValue Denormalize(double u) const;
  // Uniform over the transformed domain; integer-linear draws are uniform
  // over the integers.
  ParamValue Sample(Rng& rng) const;

  // Parses a literal of this parameter's type. Throws ConfigError.
  ParamValue Parse(const std::string& text) const;
  ParamValue FromJson(const nlohmann::json& j) const;
};

struct ValidityRule {
  std::string name;
  std::string description;
  std::function<bool(const Config&)> predicate;
};

// Known rules by name, so spaces can be rebuilt from their JSON form.
// Throws ConfigError for unknown names.
ValidityRule LookupValidityRule(const std::string& name);

class HyperparameterSpace {
 public:
  HyperparameterSpace() = default;
  HyperparameterSpace(std::vector<ParamSpec> params, std::vector<ValidityRule> rules);

  const std::vector<ParamSpec>& params() const { return params_; }
  const std::vector<ValidityRule>& rules() const { return rules_; }
  int size() const { return static_cast<int>(params_.size()); }

  // Index of `name`, or -1.
  int IndexOf(const std::string& name) const;
  const ParamSpec& Find(const std::string& name) const;

  // True iff every value lies in its domain and every rule holds. Unknown or
  // missing parameter names raise ConfigError instead.
  bool Validate(const Config& config) const;
  // Names of the rules and domains that `config` violates.
  std::vector<std::string> Violations(const Config& config) const;

  std::vector<double> Normalize(const Config& config) const;
  Config Denormalize(std::span<const double> u) const;
  Config Sample(Rng& rng) const;

  // Replaces one parameter's definition (same name). Throws ConfigError.
  void Replace(ParamSpec spec);

 private:
  std::vector<ParamSpec> params_;
  std::vector<ValidityRule> rules_;
};

nlohmann::json ToJson(const ParamValue& value);
nlohmann::json ToJson(const Config& config);
Config ConfigFromJson(const HyperparameterSpace& space, const nlohmann::json& j);
nlohmann::json ToJson(const HyperparameterSpace& space);
HyperparameterSpace SpaceFromJson(const nlohmann::json& j);

double GetDouble(const Config& config, const std::string& name);
int64_t GetInt(const Config& config, const std::string& name);

// The tunable hyperparameters of the tabular learner. optimistic_init_hi
// bounds the optimistic initial Q-value.
HyperparameterSpace SolverSearchSpace(double optimistic_init_hi = 25.0);
solver::SolverHyperparams ToHyperparams(const Config& config);
Config FromHyperparams(const solver::SolverHyperparams& hp);

}  // namespace morltune::hpo

#endif  // MORLTUNE_HPO_SPACE_H_
