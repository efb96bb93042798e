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

// morltune: hyperparameter search for multi-objective reinforcement
// learning.
//
//   morltune tune --config run.conf [--set key=value]...
//   morltune validate --config run.conf --hp hyperparams.conf
//   morltune compare RUN_A RUN_B
//   morltune analyze RUN_DIR [--top-k 4]
//   morltune true-front --env dst
//
// Exit codes: 0 success, 1 internal error, 2 configuration or usage error,
// 130 interrupted.

#include <atomic>
#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "morltune/errors.h"
#include "morltune/run_artifacts.h"
#include "morltune/runner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_interrupted{false};

void OnSigint(int) {
  g_interrupted.store(true);
  std::signal(SIGINT, SIG_DFL);  // a second Ctrl-C kills immediately
}

namespace runner = morltune::runner;

int CmdTune(const std::string& config_path, const std::vector<std::string>& overrides) {
  const auto config = runner::LoadRunConfig(config_path, overrides);
  std::signal(SIGINT, OnSigint);
  const auto result = runner::Tune(config, &g_interrupted, &std::cerr);
  if (result.interrupted) {
    std::cerr << "search memory flushed to " << result.run_dir.string() << "\n";
    return kExitInterrupted;
  }
  std::cout << "run directory: " << result.run_dir.string() << "\n";
  std::cout << "best config (trial " << result.best->trial_id << ", objective "
            << morltune::hpo::FormatValue(result.best->objective) << "):\n";
  for (const auto& [name, value] : result.best->config) {
    std::cout << "  " << name << " = " << morltune::hpo::FormatValue(value) << "\n";
  }
  std::cout << "final validation metrics (mean [95% CI]):\n"
            << runner::RenderFinalMetrics(*result.validation);
  if (result.importance) {
    std::cout << "hyperparameter importance:\n"
              << morltune::analysis::RenderTable(*result.importance, config.top_k);
  }
  return kExitOk;
}

int CmdValidate(const std::string& config_path, const std::string& hp_path,
                const std::vector<std::string>& overrides) {
  const auto config = runner::LoadRunConfig(config_path, overrides);
  const auto hp = runner::LoadHyperparams(hp_path, runner::BuildSpace(config));
  const auto result = runner::ValidateConfig(config, hp, &std::cerr);
  std::cout << "run directory: " << result.run_dir.string() << "\n"
            << "final validation metrics (mean [95% CI]):\n"
            << runner::RenderFinalMetrics(result.report);
  return kExitOk;
}

int CmdCompare(const std::string& a, const std::string& b, std::string out) {
  const auto rows = runner::Compare(a, b);
  if (out.empty()) out = (std::filesystem::path(a) / "compare.csv").string();
  morltune::artifacts::WriteText(out, runner::CompareCsv(rows));
  std::cout << "A = " << a << "\nB = " << b << "\n" << runner::RenderCompare(rows);
  return kExitOk;
}

int CmdAnalyze(const std::string& run_dir, int top_k, std::optional<uint64_t> forest_seed) {
  if (top_k < 1) throw morltune::ConfigError("--top-k must be >= 1");
  const auto report = runner::Analyze(run_dir, forest_seed);
  std::cout << morltune::analysis::RenderTable(report, top_k);
  return kExitOk;
}

int CmdTrueFront(const std::string& env_name, const std::string& out) {
  runner::RunConfig config;
  config.env = env_name;
  const auto env = runner::LoadRunEnvironment(config);
  const std::string text = morltune::ToJson(morltune::TrueFront(*env)).dump() + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    morltune::artifacts::WriteText(out, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperparameter search for multi-objective reinforcement learning"};
  app.require_subcommand(1);

  std::string config_path, hp_path, run_a, run_b, run_dir, out, env_name = "dst";
  std::vector<std::string> overrides;
  int top_k = 4;
  std::optional<uint64_t> forest_seed;

  auto* tune = app.add_subcommand("tune", "search, validate the best config and analyze");
  tune->add_option("--config,-c", config_path, "run configuration file");
  tune->add_option("--set", overrides, "override a config key (key=value)");

  auto* validate = app.add_subcommand("validate", "validate a fixed hyperparameter file");
  validate->add_option("--config,-c", config_path, "run configuration file");
  validate->add_option("--hp", hp_path, "hyperparameter file")->required();
  validate->add_option("--set", overrides, "override a config key (key=value)");

  auto* compare = app.add_subcommand("compare", "paired comparison of two validated runs");
  compare->add_option("run_a", run_a)->required();
  compare->add_option("run_b", run_b)->required();
  compare->add_option("--out", out, "where to write compare.csv (default RUN_A/compare.csv)");

  auto* analyze = app.add_subcommand("analyze", "hyperparameter importance of a finished run");
  analyze->add_option("run_dir", run_dir)->required();
  analyze->add_option("--top-k", top_k, "rows to print");
  analyze->add_option("--forest-seed", forest_seed, "forest seed (default from run.json)");

  auto* true_front = app.add_subcommand("true-front", "print an environment's exact front");
  true_front->add_option("--env", env_name, "builtin name or environment file");
  true_front->add_option("--out", out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (tune->parsed()) return CmdTune(config_path, overrides);
    if (validate->parsed()) return CmdValidate(config_path, hp_path, overrides);
    if (compare->parsed()) return CmdCompare(run_a, run_b, out);
    if (analyze->parsed()) return CmdAnalyze(run_dir, top_k, forest_seed);
    if (true_front->parsed()) return CmdTrueFront(env_name, out);
  } catch (const morltune::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const morltune::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
