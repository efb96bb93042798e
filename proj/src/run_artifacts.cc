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

#include "morltune/run_artifacts.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "morltune/analysis.h"
#include "morltune/errors.h"
#include "morltune/kv_text.h"

namespace morltune::artifacts {
namespace {

std::string Num(double v) { return hpo::FormatValue(v); }

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::vector<std::string> NonEmptyLines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string FirstLine(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

void WriteText(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string TrialsCsvHeader(const hpo::SearchMemory& memory) {
  std::string h = "trial_id";
  for (const auto& p : memory.space.params()) h += "," + p.name;
  for (uint64_t s : memory.metadata.search_seeds) h += ",seed_" + std::to_string(s);
  return h + ",objective,status";
}

std::string TrialsCsv(const hpo::SearchMemory& memory) {
  std::string out = TrialsCsvHeader(memory) + "\n";
  for (const auto& t : memory.trials) {
    out += std::to_string(t.trial_id);
    for (const auto& p : memory.space.params()) {
      const auto it = t.config.find(p.name);
      out += "," + (it == t.config.end() ? std::string() : hpo::FormatValue(it->second));
    }
    for (uint64_t s : memory.metadata.search_seeds) {
      const auto it = std::find_if(t.per_seed.begin(), t.per_seed.end(),
                                   [&](const hpo::SeedResult& r) { return r.seed == s; });
      out += "," + (it == t.per_seed.end() ? std::string() : Num(it->metric_value));
    }
    out += "," + Num(t.objective) + "," + hpo::ToString(t.status) + "\n";
  }
  return out;
}

void WriteSearchArtifacts(const fs::path& run_dir, const hpo::SearchMemory& memory) {
  WriteText(run_dir / "memory.json", hpo::ToJson(memory).dump(2) + "\n");
  WriteText(run_dir / "trials.csv", TrialsCsv(memory));
}

void WriteBestConfig(const fs::path& run_dir, const hpo::Trial& best) {
  const nlohmann::json j = {{"trial_id", best.trial_id},
                            {"objective", best.objective},
                            {"config", hpo::ToJson(best.config)}};
  WriteText(run_dir / "best_config.json", j.dump(2) + "\n");
}

std::string CurvesCsvHeader(const std::vector<uint64_t>& seeds) {
  std::string h = "step,metric,mean,ci_low,ci_high";
  for (uint64_t s : seeds) h += ",seed_" + std::to_string(s);
  return h;
}

std::string CurvesCsv(const hpo::ValidationReport& report) {
  std::string out = CurvesCsvHeader(report.seeds) + "\n";
  for (const auto& p : report.curves) {
    out += std::to_string(p.step) + "," + ToString(p.metric) + "," + Num(p.mean) + "," +
           Num(p.ci_low) + "," + Num(p.ci_high);
    for (double v : p.per_seed) out += "," + Num(v);
    out += "\n";
  }
  return out;
}

void WriteValidation(const fs::path& run_dir, const hpo::ValidationReport& report) {
  const fs::path dir = run_dir / "validation";
  WriteText(dir / "curves.csv", CurvesCsv(report));
  for (const auto& c : report.per_seed) {
    nlohmann::json j = {{"seed", c.seed}, {"front", ToJson(c.final_front)}};
    j["metrics"] = c.snapshots.empty() ? nlohmann::json(nullptr) : ToJson(c.snapshots.back());
    WriteText(dir / "fronts" / (std::to_string(c.seed) + ".json"), j.dump(2) + "\n");
  }
}

std::vector<CurveRow> CurvesTable::FinalRows() const {
  std::vector<CurveRow> out;
  if (rows.empty()) return out;
  int64_t last = rows.front().step;
  for (const auto& r : rows) last = std::max(last, r.step);
  for (const auto& r : rows) {
    if (r.step == last) out.push_back(r);
  }
  return out;
}

CurvesTable ReadCurves(const fs::path& path) {
  const auto lines = NonEmptyLines(ReadText(path));
  if (lines.empty()) throw ConfigError(path.string() + ": empty curves file");
  const auto header = SplitCsvLine(lines.front());
  const std::vector<std::string> fixed = {"step", "metric", "mean", "ci_low", "ci_high"};
  if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin())) {
    throw ConfigError(path.string() + ": unexpected curves header");
  }
  CurvesTable table;
  for (std::size_t i = fixed.size(); i < header.size(); ++i) {
    if (header[i].rfind("seed_", 0) != 0) throw ConfigError(path.string() + ": bad seed column");
    table.seeds.push_back(static_cast<uint64_t>(ParseInt(header[i].substr(5), "seed column")));
  }
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = SplitCsvLine(lines[l]);
    if (cells.size() != header.size()) {
      throw ConfigError(path.string() + ": row " + std::to_string(l) + " has the wrong width");
    }
    CurveRow r;
    r.step = ParseInt(cells[0], "step");
    r.metric = cells[1];
    r.mean = ParseDouble(cells[2], "mean");
    r.ci_low = ParseDouble(cells[3], "ci_low");
    r.ci_high = ParseDouble(cells[4], "ci_high");
    for (std::size_t i = fixed.size(); i < cells.size(); ++i) {
      r.per_seed.push_back(ParseDouble(cells[i], "seed value"));
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::vector<std::string> CheckRunDirectory(const fs::path& run_dir) {
  std::vector<std::string> problems;
  auto require = [&](const fs::path& rel) {
    if (!fs::is_regular_file(run_dir / rel)) {
      problems.push_back("missing " + rel.string());
      return false;
    }
    return true;
  };

  std::string kind;
  if (require("run.json")) {
    try {
      kind = nlohmann::json::parse(ReadText(run_dir / "run.json")).at("kind").get<std::string>();
    } catch (const std::exception& e) {
      problems.push_back(std::string("run.json: ") + e.what());
    }
  }

  if (kind == "tune") {
    require("best_config.json");
    if (require("memory.json") && require("trials.csv")) {
      try {
        const auto memory =
            hpo::SearchMemoryFromJson(nlohmann::json::parse(ReadText(run_dir / "memory.json")));
        const std::string trials = ReadText(run_dir / "trials.csv");
        if (FirstLine(trials) != TrialsCsvHeader(memory)) {
          problems.push_back("trials.csv: header does not match the search space");
        }
        if (NonEmptyLines(trials).size() != memory.trials.size() + 1) {
          problems.push_back("trials.csv: row count does not match memory.json");
        }
        if (memory.CompletedCount() >= analysis::ForestOptions::kMinRows &&
            require("analysis.csv") &&
            FirstLine(ReadText(run_dir / "analysis.csv")) != "parameter,importance,correlation") {
          problems.push_back("analysis.csv: unexpected header");
        }
      } catch (const std::exception& e) {
        problems.push_back(std::string("memory.json: ") + e.what());
      }
    }
  } else if (!kind.empty() && kind != "validate") {
    problems.push_back("run.json: unknown kind '" + kind + "'");
  }

  if (require(fs::path("validation") / "curves.csv")) {
    try {
      const CurvesTable curves = ReadCurves(run_dir / "validation" / "curves.csv");
      if (curves.seeds.empty()) problems.push_back("curves.csv: no seed columns");
      std::set<std::string> known;
      for (MetricName m : AllMetrics()) known.insert(ToString(m));
      for (const auto& r : curves.rows) {
        if (!known.contains(r.metric)) problems.push_back("curves.csv: unknown metric " + r.metric);
        if (!(r.ci_low <= r.mean && r.mean <= r.ci_high)) {
          problems.push_back("curves.csv: interval does not bracket the mean at step " +
                             std::to_string(r.step) + " for " + r.metric);
        }
      }
      for (uint64_t s : curves.seeds) {
        require(fs::path("validation") / "fronts" / (std::to_string(s) + ".json"));
      }
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

}  // namespace morltune::artifacts
