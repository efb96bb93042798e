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

#include "morltune/runner.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#include "morltune/errors.h"
#include "morltune/run_artifacts.h"

namespace morltune::runner {
namespace {

constexpr int64_t kDefaultMaxTrials = 20;

std::vector<uint64_t> ParseSeeds(const std::string& text, const std::string& what) {
  std::vector<uint64_t> out;
  std::set<uint64_t> seen;
  for (int64_t s : ParseIntList(text, what)) {
    if (s < 0) throw ConfigError(what + ": seeds must be nonnegative");
    if (!seen.insert(static_cast<uint64_t>(s)).second) {
      throw ConfigError(what + ": duplicate seed " + std::to_string(s));
    }
    out.push_back(static_cast<uint64_t>(s));
  }
  return out;
}

std::vector<std::string> Tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

hpo::ParamSpec ParseSpaceEntry(const std::string& name, const std::string& text) {
  const auto tokens = Tokens(text);
  if (tokens.empty()) throw ConfigError("space." + name + ": empty definition");
  hpo::ParamSpec p;
  p.name = name;
  p.kind = hpo::ParseParamKind(tokens[0]);
  if (p.kind == hpo::ParamKind::kCategorical) {
    p.choices.assign(tokens.begin() + 1, tokens.end());
  } else {
    if (tokens.size() != 3) throw ConfigError("space." + name + ": expected '<kind> <lo> <hi>'");
    p.lo = ParseDouble(tokens[1], "space." + name);
    p.hi = ParseDouble(tokens[2], "space." + name);
  }
  p.Check();
  return p;
}

void Log(std::ostream* log, const std::string& line) {
  if (log != nullptr) *log << line << std::endl;
}

std::string Describe(const hpo::Config& config) {
  std::string out;
  for (const auto& [name, value] : config) {
    if (!out.empty()) out += " ";
    out += name + "=" + hpo::FormatValue(value);
  }
  return out;
}

nlohmann::json RunJson(const std::string& kind, const RunConfig& config) {
  return {{"kind", kind},
          {"env", config.env},
          {"forest_seed", config.forest_seed},
          {"top_k", config.top_k},
          {"run_config", ToJson(config)}};
}

}  // namespace

fs::path RunConfig::RunDirectory() const {
  const char* root = std::getenv("MORLTUNE_OUT");
  const fs::path base = root != nullptr && *root != '\0' ? fs::path(root) : fs::path(output_dir);
  return base / run_id;
}

int RunConfig::ParallelJobs() const {
  return max_parallel_jobs > 0 ? max_parallel_jobs : hpo::DefaultParallelJobs();
}

RunConfig ParseRunConfig(const KeyValueText& text) {
  RunConfig c;
  static const std::set<std::string> kKeys = {
      "env", "optimizer", "metric", "ref_point", "eu_samples", "eu_seed", "aggregation",
      "max_trials", "max_wallclock_seconds", "search_seeds", "validation_seeds", "b_search",
      "b_validation", "snapshot_every", "optimizer_seed", "output_dir", "run_id",
      "max_parallel_jobs", "forest_seed", "top_k"};
  for (const auto& [key, value] : text.values()) {
    if (key.rfind("baseline.", 0) == 0) {
      c.baseline[key.substr(9)] = value;
    } else if (key.rfind("space.", 0) == 0) {
      c.space[key.substr(6)] = value;
    } else if (!kKeys.contains(key)) {
      throw ConfigError(text.source() + ": unknown key '" + key + "'");
    }
  }
  auto get = [&](const char* key) { return text.Get(key); };
  auto nonneg = [](int64_t v, const char* what) {
    if (v < 0) throw ConfigError(std::string(what) + " must be >= 0");
    return static_cast<uint64_t>(v);
  };

  if (auto v = get("env")) c.env = *v;
  if (auto v = get("optimizer")) c.optimizer = *v;
  if (c.optimizer != "random" && c.optimizer != "grid" && c.optimizer != "density") {
    throw ConfigError("optimizer must be random, grid or density, got '" + c.optimizer + "'");
  }
  if (auto v = get("metric")) c.metric = *v;
  ParseMetricName(c.metric);
  if (auto v = get("ref_point")) c.ref_point = ValueVector(ParseDoubleList(*v, "ref_point"));
  if (auto v = get("eu_samples")) c.eu_samples = ParseInt(*v, "eu_samples");
  if (c.eu_samples < 1) throw ConfigError("eu_samples must be >= 1");
  if (auto v = get("eu_seed")) c.eu_seed = nonneg(ParseInt(*v, "eu_seed"), "eu_seed");
  if (auto v = get("aggregation")) c.aggregation = hpo::ParseAggregation(*v);
  if (auto v = get("max_trials")) {
    c.max_trials = ParseInt(*v, "max_trials");
    if (*c.max_trials < 1) throw ConfigError("max_trials must be >= 1");
  }
  if (auto v = get("max_wallclock_seconds")) {
    c.max_wallclock_seconds = ParseDouble(*v, "max_wallclock_seconds");
    if (!(*c.max_wallclock_seconds > 0)) throw ConfigError("max_wallclock_seconds must be > 0");
  }
  if (!c.max_trials && !c.max_wallclock_seconds) c.max_trials = kDefaultMaxTrials;
  if (auto v = get("search_seeds")) c.search_seeds = ParseSeeds(*v, "search_seeds");
  if (auto v = get("validation_seeds")) c.validation_seeds = ParseSeeds(*v, "validation_seeds");
  hpo::CheckSeedDisjoint(c.search_seeds, c.validation_seeds);
  if (auto v = get("b_search")) c.b_search = ParseInt(*v, "b_search");
  if (auto v = get("b_validation")) c.b_validation = ParseInt(*v, "b_validation");
  if (c.b_search < 1 || c.b_validation < 1) throw ConfigError("budgets must be >= 1");
  if (auto v = get("snapshot_every")) c.snapshot_every = ParseInt(*v, "snapshot_every");
  if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
  if (auto v = get("optimizer_seed")) {
    c.optimizer_seed = nonneg(ParseInt(*v, "optimizer_seed"), "optimizer_seed");
  }
  if (auto v = get("output_dir")) c.output_dir = *v;
  if (auto v = get("run_id")) c.run_id = *v;
  if (c.run_id.empty() || c.run_id.find('/') != std::string::npos) {
    throw ConfigError("run_id must be a nonempty name without '/'");
  }
  if (auto v = get("max_parallel_jobs")) {
    c.max_parallel_jobs = static_cast<int>(ParseInt(*v, "max_parallel_jobs"));
    if (c.max_parallel_jobs < 0) throw ConfigError("max_parallel_jobs must be >= 0");
  }
  if (auto v = get("forest_seed")) c.forest_seed = nonneg(ParseInt(*v, "forest_seed"), "forest_seed");
  if (auto v = get("top_k")) c.top_k = static_cast<int>(ParseInt(*v, "top_k"));
  if (c.top_k < 1) throw ConfigError("top_k must be >= 1");

  // Catch malformed space and baseline entries before anything runs.
  const hpo::HyperparameterSpace space = BuildSpace(c);
  if (!c.baseline.empty()) ParseHyperparams(c.baseline, space);
  return c;
}

RunConfig LoadRunConfig(const std::string& path, const std::vector<std::string>& overrides) {
  KeyValueText text = path.empty() ? KeyValueText::Parse("", "<defaults>") : KeyValueText::Load(path);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    text.Set(Trim(o.substr(0, eq)), Trim(o.substr(eq + 1)));
  }
  return ParseRunConfig(text);
}

nlohmann::json ToJson(const RunConfig& c) {
  nlohmann::json j = {{"env", c.env},
                      {"optimizer", c.optimizer},
                      {"metric", c.metric},
                      {"eu_samples", c.eu_samples},
                      {"eu_seed", c.eu_seed},
                      {"aggregation", hpo::ToString(c.aggregation)},
                      {"search_seeds", c.search_seeds},
                      {"validation_seeds", c.validation_seeds},
                      {"b_search", c.b_search},
                      {"b_validation", c.b_validation},
                      {"snapshot_every", c.snapshot_every},
                      {"optimizer_seed", c.optimizer_seed},
                      {"run_id", c.run_id},
                      {"forest_seed", c.forest_seed},
                      {"top_k", c.top_k},
                      {"baseline", c.baseline},
                      {"space", c.space}};
  j["ref_point"] = c.ref_point ? ToJson(*c.ref_point) : nlohmann::json(nullptr);
  j["max_trials"] = c.max_trials ? nlohmann::json(*c.max_trials) : nlohmann::json(nullptr);
  j["max_wallclock_seconds"] =
      c.max_wallclock_seconds ? nlohmann::json(*c.max_wallclock_seconds) : nlohmann::json(nullptr);
  return j;
}

std::shared_ptr<const Environment> LoadRunEnvironment(const RunConfig& config) {
  for (const auto& name : BuiltinEnvironmentNames()) {
    if (name == config.env) return MakeEnvironment(name);
  }
  if (fs::is_regular_file(config.env)) return LoadEnvironment(config.env);
  throw ConfigError("unknown environment '" + config.env + "' (not a builtin and not a file)");
}

hpo::HyperparameterSpace BuildSpace(const RunConfig& config) {
  hpo::HyperparameterSpace space = hpo::SolverSearchSpace();
  for (const auto& [name, text] : config.space) space.Replace(ParseSpaceEntry(name, text));
  return space;
}

MetricConfig BuildMetricConfig(const RunConfig& config, const Environment& env) {
  MetricConfig mc;
  mc.ref_point = config.ref_point ? *config.ref_point : env.default_ref_point();
  if (mc.ref_point.size() != env.objective_count()) {
    throw ConfigError("ref_point has " + std::to_string(mc.ref_point.size()) +
                      " entries but the environment has " +
                      std::to_string(env.objective_count()) + " objectives");
  }
  mc.eu_samples = config.eu_samples;
  mc.eu_seed = config.eu_seed;
  try {
    mc.reference_front = TrueFront(env);
  } catch (const UnsupportedError&) {
    mc.reference_front.reset();
  }
  return mc;
}

hpo::Config ParseHyperparams(const std::map<std::string, std::string>& values,
                             const hpo::HyperparameterSpace& space) {
  hpo::Config c;
  for (const auto& [name, text] : values) c[name] = space.Find(name).Parse(text);
  for (const auto& p : space.params()) {
    if (!c.contains(p.name)) throw ConfigError("hyperparameters do not assign '" + p.name + "'");
  }
  return c;
}

hpo::Config LoadHyperparams(const std::string& path, const hpo::HyperparameterSpace& space) {
  return ParseHyperparams(KeyValueText::Load(path).values(), space);
}

TuneResult Tune(const RunConfig& config, const std::atomic<bool>* interrupt, std::ostream* log) {
  const auto env = LoadRunEnvironment(config);
  const MetricConfig metric_config = BuildMetricConfig(config, *env);
  const hpo::HyperparameterSpace space = BuildSpace(config);
  std::vector<hpo::Config> baselines;
  if (!config.baseline.empty()) baselines.push_back(ParseHyperparams(config.baseline, space));

  TuneResult result;
  result.run_dir = config.RunDirectory();
  fs::create_directories(result.run_dir);
  artifacts::WriteText(result.run_dir / "run.json", RunJson("tune", config).dump(2) + "\n");

  hpo::RunMetadata meta;
  meta.env_name = config.env;
  meta.optimizer = config.optimizer;
  meta.optimizer_seed = config.optimizer_seed;
  meta.metric = config.metric;
  meta.ref_point = metric_config.ref_point;
  meta.eu_samples = config.eu_samples;
  meta.eu_seed = config.eu_seed;
  meta.aggregation = config.aggregation;
  meta.search_seeds = config.search_seeds;
  meta.validation_seeds = config.validation_seeds;
  meta.b_search = config.b_search;
  meta.b_validation = config.b_validation;
  meta.snapshot_every = config.snapshot_every;

  hpo::Study study(space, hpo::MakeOptimizer(config.optimizer, space, config.optimizer_seed),
                   meta);
  const hpo::ObjectiveSpec objective{ParseMetricName(config.metric), metric_config,
                                     config.aggregation};
  const int jobs = config.ParallelJobs();
  auto evaluate = [&](const hpo::Config& c) {
    return hpo::EvaluateConfig(*env, c, config.search_seeds, config.b_search, objective, jobs);
  };
  hpo::SearchCallbacks callbacks;
  callbacks.interrupt = interrupt;
  callbacks.persist = [&](const hpo::SearchMemory& memory) {
    artifacts::WriteSearchArtifacts(result.run_dir, memory);
    const auto& t = memory.trials.back();
    Log(log, "trial " + std::to_string(t.trial_id) + " " + hpo::ToString(t.status) +
                 " objective=" + hpo::FormatValue(t.objective) + "  " + Describe(t.config));
  };
  const hpo::SearchOutcome outcome =
      hpo::RunSearch(study, evaluate,
                     hpo::StoppingCriterion{config.max_trials, config.max_wallclock_seconds},
                     baselines, callbacks);
  result.memory = study.memory();
  artifacts::WriteSearchArtifacts(result.run_dir, result.memory);
  if (outcome.interrupted) {
    result.interrupted = true;
    Log(log, "interrupted after " + std::to_string(outcome.trials_run) + " trials");
    return result;
  }

  result.best = study.BestTrial();
  artifacts::WriteBestConfig(result.run_dir, *result.best);
  Log(log, "best trial " + std::to_string(result.best->trial_id) +
               " objective=" + hpo::FormatValue(result.best->objective) + "  " +
               Describe(result.best->config));

  result.validation = hpo::RunValidation(*env, result.best->config, config.validation_seeds,
                                         config.search_seeds, config.b_validation,
                                         metric_config, config.snapshot_every, jobs);
  artifacts::WriteValidation(result.run_dir, *result.validation);

  if (result.memory.CompletedCount() >= analysis::ForestOptions::kMinRows) {
    result.importance = Analyze(result.run_dir, config.forest_seed);
  } else {
    Log(log, "skipping sensitivity analysis: fewer than " +
                 std::to_string(analysis::ForestOptions::kMinRows) + " completed trials");
  }

  const auto problems = artifacts::CheckRunDirectory(result.run_dir);
  if (!problems.empty()) {
    throw std::logic_error("run directory failed its self-check: " + problems.front());
  }
  return result;
}

ValidateResult ValidateConfig(const RunConfig& config, const hpo::Config& hyperparams,
                              std::ostream* log) {
  const auto env = LoadRunEnvironment(config);
  const MetricConfig metric_config = BuildMetricConfig(config, *env);
  const hpo::HyperparameterSpace space = BuildSpace(config);
  const auto violations = space.Violations(hyperparams);
  if (!violations.empty()) {
    std::string list;
    for (const auto& v : violations) list += (list.empty() ? "" : ", ") + v;
    throw ConfigError("hyperparameters are invalid: " + list);
  }
  ValidateResult result;
  result.run_dir = config.RunDirectory();
  fs::create_directories(result.run_dir);
  artifacts::WriteText(result.run_dir / "run.json", RunJson("validate", config).dump(2) + "\n");
  Log(log, "validating " + Describe(hyperparams));
  result.report = hpo::RunValidation(*env, hyperparams, config.validation_seeds,
                                     config.search_seeds, config.b_validation, metric_config,
                                     config.snapshot_every, config.ParallelJobs());
  artifacts::WriteValidation(result.run_dir, result.report);
  const auto problems = artifacts::CheckRunDirectory(result.run_dir);
  if (!problems.empty()) {
    throw std::logic_error("run directory failed its self-check: " + problems.front());
  }
  return result;
}

analysis::ImportanceReport Analyze(const fs::path& run_dir, std::optional<uint64_t> forest_seed) {
  const auto memory = hpo::SearchMemoryFromJson(
      nlohmann::json::parse(artifacts::ReadText(run_dir / "memory.json")));
  if (!forest_seed) {
    forest_seed = 0;
    if (fs::is_regular_file(run_dir / "run.json")) {
      const auto run = nlohmann::json::parse(artifacts::ReadText(run_dir / "run.json"));
      if (run.contains("forest_seed")) forest_seed = run.at("forest_seed").get<uint64_t>();
    }
  }
  const auto report = analysis::RfImportance(analysis::BuildDataset(memory), *forest_seed);
  artifacts::WriteText(run_dir / "analysis.csv", analysis::ToCsv(report));
  return report;
}

std::vector<CompareRow> Compare(const fs::path& run_a, const fs::path& run_b) {
  auto env_of = [](const fs::path& dir) {
    return nlohmann::json::parse(artifacts::ReadText(dir / "run.json")).at("env").get<std::string>();
  };
  if (env_of(run_a) != env_of(run_b)) throw ConfigError("runs use different environments");
  const auto a = artifacts::ReadCurves(run_a / "validation" / "curves.csv");
  const auto b = artifacts::ReadCurves(run_b / "validation" / "curves.csv");
  if (std::set<uint64_t>(a.seeds.begin(), a.seeds.end()) !=
      std::set<uint64_t>(b.seeds.begin(), b.seeds.end())) {
    throw ConfigError("runs were validated on different seeds");
  }
  const auto final_a = a.FinalRows();
  const auto final_b = b.FinalRows();
  if (final_a.empty() || final_b.empty()) throw ConfigError("missing validation data");
  std::set<std::string> metrics_a, metrics_b;
  for (const auto& r : final_a) metrics_a.insert(r.metric);
  for (const auto& r : final_b) metrics_b.insert(r.metric);
  if (metrics_a != metrics_b) throw ConfigError("runs report different metrics");

  std::vector<CompareRow> out;
  for (const auto& ra : final_a) {
    const auto& rb = *std::find_if(final_b.begin(), final_b.end(),
                                   [&](const auto& r) { return r.metric == ra.metric; });
    CompareRow row;
    row.metric = ra.metric;
    for (std::size_t i = 0; i < a.seeds.size(); ++i) {
      const auto j = std::find(b.seeds.begin(), b.seeds.end(), a.seeds[i]) - b.seeds.begin();
      const double va = ra.per_seed[i], vb = rb.per_seed[j];
      row.mean_a += va;
      row.mean_b += vb;
      row.mean_difference += va - vb;
      row.a_greater += va > vb ? 1 : 0;
      ++row.paired_seeds;
    }
    row.mean_a /= row.paired_seeds;
    row.mean_b /= row.paired_seeds;
    row.mean_difference /= row.paired_seeds;
    out.push_back(row);
  }
  return out;
}

std::string CompareCsv(const std::vector<CompareRow>& rows) {
  std::string out = "metric,mean_a,mean_b,mean_difference,a_greater,paired_seeds\n";
  for (const auto& r : rows) {
    out += r.metric + "," + hpo::FormatValue(r.mean_a) + "," + hpo::FormatValue(r.mean_b) + "," +
           hpo::FormatValue(r.mean_difference) + "," + std::to_string(r.a_greater) + "," +
           std::to_string(r.paired_seeds) + "\n";
  }
  return out;
}

std::string RenderCompare(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-9s %14s %14s %14s %9s\n", "metric", "mean A", "mean B",
                "mean A-B", "A > B");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-9s %14.6g %14.6g %14.6g %6d/%-2d\n", r.metric.c_str(),
                  r.mean_a, r.mean_b, r.mean_difference, r.a_greater, r.paired_seeds);
    out << line;
  }
  return out.str();
}

std::string RenderFinalMetrics(const hpo::ValidationReport& report) {
  std::ostringstream out;
  char line[256];
  for (const auto& p : report.Final()) {
    std::snprintf(line, sizeof(line), "%-9s %12.6g  [%.6g, %.6g]\n", ToString(p.metric).c_str(),
                  p.mean, p.ci_low, p.ci_high);
    out << line;
  }
  return out.str();
}

}  // namespace morltune::runner
