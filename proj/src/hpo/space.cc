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

#include "morltune/hpo/space.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "morltune/errors.h"
#include "morltune/kv_text.h"

namespace morltune::hpo {
namespace {

[[noreturn]] void Fail(const std::string& message) { throw ConfigError(message); }

double Transform(const ParamSpec& p, double x) { return p.is_log() ? std::log(x) : x; }
double Untransform(const ParamSpec& p, double x) { return p.is_log() ? std::exp(x) : x; }

int64_t ClampRound(const ParamSpec& p, double x) {
  const double r = std::nearbyint(std::clamp(x, p.lo, p.hi));
  return static_cast<int64_t>(r);
}

}  // namespace

std::string ToString(ParamKind kind) {
  switch (kind) {
    case ParamKind::kFloatLinear: return "float-linear";
    case ParamKind::kFloatLog: return "float-log";
    case ParamKind::kInteger: return "integer";
    case ParamKind::kIntegerLog: return "integer-log";
    case ParamKind::kCategorical: return "categorical";
  }
  return "unknown";
}

ParamKind ParseParamKind(const std::string& text) {
  if (text == "float" || text == "float-linear") return ParamKind::kFloatLinear;
  if (text == "float-log") return ParamKind::kFloatLog;
  if (text == "integer" || text == "int") return ParamKind::kInteger;
  if (text == "integer-log" || text == "int-log") return ParamKind::kIntegerLog;
  if (text == "categorical") return ParamKind::kCategorical;
  Fail("unknown parameter kind '" + text + "'");
}

std::string FormatValue(const ParamValue& value) {
  if (const auto* d = std::get_if<double>(&value)) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), *d);
    return std::string(buf, res.ptr);
  }
  if (const auto* i = std::get_if<int64_t>(&value)) return std::to_string(*i);
  return std::get<std::string>(value);
}

ParamSpec ParamSpec::Float(std::string name, double lo, double hi, bool log) {
  ParamSpec p{std::move(name), log ? ParamKind::kFloatLog : ParamKind::kFloatLinear,
              lo, hi, {}};
  p.Check();
  return p;
}

ParamSpec ParamSpec::Integer(std::string name, int64_t lo, int64_t hi, bool log) {
  ParamSpec p{std::move(name), log ? ParamKind::kIntegerLog : ParamKind::kInteger,
              static_cast<double>(lo), static_cast<double>(hi), {}};
  p.Check();
  return p;
}

ParamSpec ParamSpec::Categorical(std::string name, std::vector<std::string> choices) {
  ParamSpec p{std::move(name), ParamKind::kCategorical, 0.0, 0.0, std::move(choices)};
  p.Check();
  return p;
}

void ParamSpec::Check() const {
  if (name.empty()) Fail("parameter name must not be empty");
  if (kind == ParamKind::kCategorical) {
    if (choices.empty()) Fail(name + ": categorical parameter needs choices");
    if (std::set<std::string>(choices.begin(), choices.end()).size() != choices.size()) {
      Fail(name + ": duplicate categorical choices");
    }
    return;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    Fail(name + ": bounds need lo < hi");
  }
  if (is_log() && lo <= 0.0) Fail(name + ": log-scaled bounds must be positive");
  if (is_integer() && (lo != std::floor(lo) || hi != std::floor(hi))) {
    Fail(name + ": integer bounds must be whole numbers");
  }
}

bool ParamSpec::Contains(const ParamValue& value) const {
  switch (kind) {
    case ParamKind::kFloatLinear:
    case ParamKind::kFloatLog: {
      const auto* d = std::get_if<double>(&value);
      return d != nullptr && std::isfinite(*d) && *d >= lo && *d <= hi;
    }
    case ParamKind::kInteger:
    case ParamKind::kIntegerLog: {
      const auto* i = std::get_if<int64_t>(&value);
      return i != nullptr && *i >= lo && *i <= hi;
    }
    case ParamKind::kCategorical: {
      const auto* s = std::get_if<std::string>(&value);
      return s != nullptr && std::find(choices.begin(), choices.end(), *s) != choices.end();
    }
  }
  return false;
}

double ParamSpec::Normalize(const ParamValue& value) const {
  if (!Contains(value)) Fail(name + ": value " + FormatValue(value) + " outside domain");
  if (kind == ParamKind::kCategorical) {
    if (choices.size() == 1) return 0.0;
    const auto it = std::find(choices.begin(), choices.end(), std::get<std::string>(value));
    return static_cast<double>(it - choices.begin()) / (choices.size() - 1);
  }
  const double x = is_integer() ? static_cast<double>(std::get<int64_t>(value))
                                : std::get<double>(value);
  const double t_lo = Transform(*this, lo);
  const double t_hi = Transform(*this, hi);
  return std::clamp((Transform(*this, x) - t_lo) / (t_hi - t_lo), 0.0, 1.0);
}

ParamValue ParamSpec::Denormalize(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (kind == ParamKind::kCategorical) {
    const auto i = static_cast<std::size_t>(std::nearbyint(u * (choices.size() - 1)));
    return choices[i];
  }
  const double t_lo = Transform(*this, lo);
  const double t_hi = Transform(*this, hi);
  const double x = Untransform(*this, t_lo + u * (t_hi - t_lo));
  if (is_integer()) return ClampRound(*this, x);
  return std::clamp(x, lo, hi);
}

ParamValue ParamSpec::Sample(Rng& rng) const {
  switch (kind) {
    case ParamKind::kCategorical:
      return choices[rng.UniformInt(choices.size())];
    case ParamKind::kInteger:
      return static_cast<int64_t>(lo) +
             static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(hi - lo) + 1));
    default:
      return Denormalize(rng.Uniform());
  }
}

ParamValue ParamSpec::Parse(const std::string& text) const {
  switch (kind) {
    case ParamKind::kCategorical: return Trim(text);
    case ParamKind::kInteger:
    case ParamKind::kIntegerLog: return ParseInt(text, name);
    default: return ParseDouble(text, name);
  }
}

ParamValue ParamSpec::FromJson(const nlohmann::json& j) const {
  if (kind == ParamKind::kCategorical) {
    if (!j.is_string()) Fail(name + ": expected a string");
    return j.get<std::string>();
  }
  if (!j.is_number()) Fail(name + ": expected a number");
  if (is_integer()) {
    if (j.is_number_integer()) return j.get<int64_t>();
    const double d = j.get<double>();
    if (d != std::floor(d)) Fail(name + ": expected an integer");
    return static_cast<int64_t>(d);
  }
  return j.get<double>();
}

ValidityRule LookupValidityRule(const std::string& name) {
  if (name == "epsilon_non_increasing") {
    return {name, "initial_epsilon >= final_epsilon (exploration never grows)",
            [](const Config& c) {
              if (!c.contains("initial_epsilon") || !c.contains("final_epsilon")) return true;
              return GetDouble(c, "initial_epsilon") >= GetDouble(c, "final_epsilon");
            }};
  }
  Fail("unknown validity rule '" + name + "'");
}

HyperparameterSpace::HyperparameterSpace(std::vector<ParamSpec> params,
                                         std::vector<ValidityRule> rules)
    : params_(std::move(params)), rules_(std::move(rules)) {
  std::set<std::string> names;
  for (const auto& p : params_) {
    p.Check();
    if (!names.insert(p.name).second) Fail("duplicate parameter '" + p.name + "'");
  }
}

int HyperparameterSpace::IndexOf(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (params_[i].name == name) return i;
  }
  return -1;
}

const ParamSpec& HyperparameterSpace::Find(const std::string& name) const {
  const int i = IndexOf(name);
  if (i < 0) Fail("unknown parameter '" + name + "'");
  return params_[i];
}

std::vector<std::string> HyperparameterSpace::Violations(const Config& config) const {
  for (const auto& [name, value] : config) {
    if (IndexOf(name) < 0) Fail("unknown parameter '" + name + "'");
  }
  std::vector<std::string> out;
  for (const auto& p : params_) {
    const auto it = config.find(p.name);
    if (it == config.end()) Fail("config does not assign '" + p.name + "'");
    if (!p.Contains(it->second)) out.push_back(p.name);
  }
  if (!out.empty()) return out;  // rules assume in-domain values
  for (const auto& rule : rules_) {
    if (!rule.predicate(config)) out.push_back(rule.name);
  }
  return out;
}

bool HyperparameterSpace::Validate(const Config& config) const {
  return Violations(config).empty();
}

std::vector<double> HyperparameterSpace::Normalize(const Config& config) const {
  std::vector<double> u;
  u.reserve(params_.size());
  for (const auto& p : params_) {
    const auto it = config.find(p.name);
    if (it == config.end()) Fail("config does not assign '" + p.name + "'");
    u.push_back(p.Normalize(it->second));
  }
  return u;
}

Config HyperparameterSpace::Denormalize(std::span<const double> u) const {
  if (u.size() != params_.size()) Fail("normalized vector has the wrong length");
  Config c;
  for (std::size_t i = 0; i < params_.size(); ++i) c[params_[i].name] = params_[i].Denormalize(u[i]);
  return c;
}

Config HyperparameterSpace::Sample(Rng& rng) const {
  Config c;
  for (const auto& p : params_) c[p.name] = p.Sample(rng);
  return c;
}

void HyperparameterSpace::Replace(ParamSpec spec) {
  spec.Check();
  const int i = IndexOf(spec.name);
  if (i < 0) Fail("unknown parameter '" + spec.name + "'");
  params_[i] = std::move(spec);
}

nlohmann::json ToJson(const ParamValue& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

nlohmann::json ToJson(const Config& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : config) j[name] = ToJson(value);
  return j;
}

Config ConfigFromJson(const HyperparameterSpace& space, const nlohmann::json& j) {
  if (!j.is_object()) Fail("config must be a JSON object");
  Config c;
  for (const auto& [name, value] : j.items()) c[name] = space.Find(name).FromJson(value);
  return c;
}

nlohmann::json ToJson(const HyperparameterSpace& space) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : space.params()) {
    nlohmann::json e = {{"name", p.name}, {"kind", ToString(p.kind)}};
    if (p.kind == ParamKind::kCategorical) {
      e["choices"] = p.choices;
    } else if (p.is_integer()) {
      e["lo"] = static_cast<int64_t>(p.lo);
      e["hi"] = static_cast<int64_t>(p.hi);
    } else {
      e["lo"] = p.lo;
      e["hi"] = p.hi;
    }
    params.push_back(std::move(e));
  }
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : space.rules()) {
    rules.push_back({{"name", r.name}, {"description", r.description}});
  }
  return {{"parameters", params}, {"validity_rules", rules}};
}

HyperparameterSpace SpaceFromJson(const nlohmann::json& j) {
  try {
    std::vector<ParamSpec> params;
    for (const auto& e : j.at("parameters")) {
      ParamSpec p;
      p.name = e.at("name").get<std::string>();
      p.kind = ParseParamKind(e.at("kind").get<std::string>());
      if (p.kind == ParamKind::kCategorical) {
        p.choices = e.at("choices").get<std::vector<std::string>>();
      } else {
        p.lo = e.at("lo").get<double>();
        p.hi = e.at("hi").get<double>();
      }
      params.push_back(std::move(p));
    }
    std::vector<ValidityRule> rules;
    for (const auto& r : j.at("validity_rules")) {
      rules.push_back(LookupValidityRule(r.at("name").get<std::string>()));
    }
    return HyperparameterSpace(std::move(params), std::move(rules));
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("malformed search space: ") + e.what());
  }
}

double GetDouble(const Config& config, const std::string& name) {
  const auto it = config.find(name);
  if (it == config.end()) Fail("config does not assign '" + name + "'");
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<int64_t>(&it->second)) return static_cast<double>(*i);
  Fail(name + ": expected a number");
}

int64_t GetInt(const Config& config, const std::string& name) {
  const auto it = config.find(name);
  if (it == config.end()) Fail("config does not assign '" + name + "'");
  if (const auto* i = std::get_if<int64_t>(&it->second)) return *i;
  if (const auto* d = std::get_if<double>(&it->second); d && *d == std::floor(*d)) {
    return static_cast<int64_t>(*d);
  }
  Fail(name + ": expected an integer");
}

HyperparameterSpace SolverSearchSpace(double optimistic_init_hi) {
  return HyperparameterSpace(
      {ParamSpec::Float("learning_rate", 0.001, 1.0, /*log=*/true),
       ParamSpec::Float("initial_epsilon", 0.01, 1.0),
       ParamSpec::Float("final_epsilon", 0.01, 1.0),
       ParamSpec::Integer("epsilon_decay_steps", 1, 100000, /*log=*/true),
       ParamSpec::Integer("num_sample_w", 2, 10),
       ParamSpec::Float("optimistic_init", 0.0, optimistic_init_hi),
       ParamSpec::Integer("eval_episodes", 1, 5)},
      {LookupValidityRule("epsilon_non_increasing")});
}

solver::SolverHyperparams ToHyperparams(const Config& config) {
  solver::SolverHyperparams hp;
  auto maybe_double = [&](const char* name, double& field) {
    if (config.contains(name)) field = GetDouble(config, name);
  };
  auto maybe_int = [&](const char* name, auto& field) {
    if (config.contains(name)) field = static_cast<std::decay_t<decltype(field)>>(GetInt(config, name));
  };
  maybe_double("learning_rate", hp.learning_rate);
  maybe_double("initial_epsilon", hp.initial_epsilon);
  maybe_double("final_epsilon", hp.final_epsilon);
  maybe_int("epsilon_decay_steps", hp.epsilon_decay_steps);
  maybe_int("num_sample_w", hp.num_sample_w);
  maybe_double("optimistic_init", hp.optimistic_init);
  maybe_int("eval_episodes", hp.eval_episodes);
  return hp;
}

Config FromHyperparams(const solver::SolverHyperparams& hp) {
  return {{"learning_rate", hp.learning_rate},
          {"initial_epsilon", hp.initial_epsilon},
          {"final_epsilon", hp.final_epsilon},
          {"epsilon_decay_steps", hp.epsilon_decay_steps},
          {"num_sample_w", static_cast<int64_t>(hp.num_sample_w)},
          {"optimistic_init", hp.optimistic_init},
          {"eval_episodes", static_cast<int64_t>(hp.eval_episodes)}};
}

}  // namespace morltune::hpo
