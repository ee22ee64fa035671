// Copyright 2026 The LoI Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "loi/experiment/report.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "json_convert.h"
#include "loi/alloc/allocator.h"
#include "loi/common/errors.h"
#include "loi/eval/fixed_bobs.h"
#include "loi/experiment/csv.h"
#include "loi/experiment/manifest.h"
#include "loi/experiment/serialization.h"

namespace loi::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

double ConfidenceHalfWidth95(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return 1.96 * std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
}

namespace {

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

std::vector<const ManifestEntry*> RequireStage(const RunManifest& manifest,
                                               const std::string& stage,
                                               const std::string& producer) {
  auto entries = manifest.Stage(stage);
  if (entries.empty()) {
    throw ValidationError("manifest has no '" + stage + "' stage entry; " + producer);
  }
  return entries;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Ordered (environment, scenario) cells with per-method raw rewards.
struct Cell {
  std::string environment;
  std::string scenario;
  std::vector<std::string> methods;
  std::map<std::string, std::vector<double>> rewards;
};

}  // namespace

std::vector<fs::path> WriteReport(const fs::path& manifest_path, const fs::path& out_dir) {
  const RunManifest manifest = ReadManifest(manifest_path);
  const fs::path root = manifest_path.parent_path();
  VerifyManifest(manifest, root);
  const std::string rerun = "re-run 'loi run-all' to produce it";

  // Evaluation cells.
  std::vector<Cell> cells;
  for (const auto* entry : RequireStage(manifest, "evaluation", rerun)) {
    if (!EndsWith(entry->path, "raw.csv")) continue;
    for (const auto& row : ParseRawRewards(ReadCsv(root / entry->path))) {
      auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& c) {
        return c.environment == row.environment && c.scenario == row.scenario;
      });
      if (it == cells.end()) {
        cells.push_back({row.environment, row.scenario, {}, {}});
        it = cells.end() - 1;
      }
      if (!it->rewards.contains(row.method)) it->methods.push_back(row.method);
      it->rewards[row.method].push_back(row.reward);
    }
  }

  // LoI per cell.
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> loi;
  std::map<std::pair<std::string, std::string>, std::size_t> loi_samples;
  for (const auto* entry : RequireStage(manifest, "loi", rerun)) {
    const auto estimate = LoIEstimateFromJson(ReadTextFile(root / entry->path));
    const auto key = std::make_pair(estimate.environment_id, estimate.scenario_id);
    loi[key] = {estimate.mean, estimate.std};
    loi_samples[key] = estimate.samples.size();
  }

  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const CsvTable& table) {
    WriteCsv(out_dir / name, table);
    written.push_back(out_dir / name);
  };

  CsvTable normalized;
  normalized.header = {"environment", "scenario",          "method",
                       "mean_reward", "normalized_reward", "ci95_half_width", "games"};
  for (const auto& c : cells) {
    if (!c.rewards.contains("SP")) {
      throw ValidationError("evaluation of " + c.environment + "/" + c.scenario +
                            " has no SP baseline");
    }
    const double sp = Mean(c.rewards.at("SP"));
    for (const auto& m : c.methods) {
      const auto& raw = c.rewards.at(m);
      if (sp == 0.0) {
        // Normalization is undefined; the raw mean is still reported.
        normalized.rows.push_back({c.environment, c.scenario, m, FormatDouble(Mean(raw)),
                                   "", "", std::to_string(raw.size())});
        continue;
      }
      std::vector<double> scaled;
      for (double r : raw) scaled.push_back(r / sp);
      normalized.rows.push_back({c.environment, c.scenario, m, FormatDouble(Mean(raw)),
                                 FormatDouble(Mean(scaled)),
                                 FormatDouble(ConfidenceHalfWidth95(scaled)),
                                 std::to_string(scaled.size())});
    }
  }
  emit("normalized_rewards.csv", normalized);

  CsvTable loi_table;
  loi_table.header = {"environment", "scenario", "loi_mean_nats", "loi_std_nats", "samples"};
  for (const auto& c : cells) {
    const auto key = std::make_pair(c.environment, c.scenario);
    if (!loi.contains(key)) {
      throw ValidationError("no LoI entry for " + c.environment + "/" + c.scenario);
    }
    loi_table.rows.push_back({c.environment, c.scenario, FormatDouble(loi[key].first),
                              FormatDouble(loi[key].second),
                              std::to_string(loi_samples[key])});
  }
  emit("loi_table.csv", loi_table);

  // Improvement and Pearson per environment.
  CsvTable improvement;
  improvement.header = {"environment", "scenario", "sp_mean_reward", "pp5_mean_reward",
                        "average_improvement"};
  CsvTable pearson;
  pearson.header = {"environment", "coefficient", "scenarios", "note"};
  std::vector<std::string> envs;
  for (const auto& c : cells) {
    if (std::find(envs.begin(), envs.end(), c.environment) == envs.end()) {
      envs.push_back(c.environment);
    }
  }
  for (const auto& env : envs) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& c : cells) {
      if (c.environment != env) continue;
      const double r1 = Mean(c.rewards.at("SP"));
      if (!c.rewards.contains("PP5")) {
        improvement.rows.push_back({env, c.scenario, FormatDouble(r1), "", ""});
        continue;
      }
      const double r3 = Mean(c.rewards.at("PP5"));
      const double delta = eval::AverageImprovement(r1, r3);
      improvement.rows.push_back(
          {env, c.scenario, FormatDouble(r1), FormatDouble(r3), FormatDouble(delta)});
      xs.push_back(loi[{env, c.scenario}].first);
      ys.push_back(delta);
    }
    try {
      pearson.rows.push_back({env, FormatDouble(eval::PearsonCorrelation(xs, ys)),
                              std::to_string(xs.size()), ""});
    } catch (const Error& e) {
      pearson.rows.push_back({env, "", std::to_string(xs.size()), e.what()});
    }
  }
  emit("improvement_table.csv", improvement);
  emit("pearson_table.csv", pearson);

  // Allocation comparison.
  CsvTable comparison;
  comparison.header = {"environment", "plan", "total_steps", "mean_normalized_reward",
                       "ci95_half_width", "samples"};
  std::map<std::pair<std::string, std::string>, std::int64_t> totals;
  for (const auto* entry :
       RequireStage(manifest, "allocation", "re-run 'loi run-all' to produce it")) {
    if (!EndsWith(entry->path, ".json")) continue;
    const json doc = json::parse(ReadTextFile(root / entry->path));
    const auto plan = AllocationPlanFromJson(doc.dump());
    const std::string label = EndsWith(entry->path, "uniform.json") ? "uniform" : "heuristic";
    totals[{doc.at("environment").get<std::string>(), label}] = plan.total_steps;
  }
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<double>> plan_rewards;
  for (const auto* entry : RequireStage(manifest, "comparison", rerun)) {
    for (const auto& row : ParseRawRewards(ReadCsv(root / entry->path))) {
      const auto key = std::make_pair(row.environment, row.method);
      if (!plan_rewards.contains(key)) order.push_back(key);
      plan_rewards[key].push_back(row.reward);
    }
  }
  for (const auto& key : order) {
    const auto& values = plan_rewards[key];
    comparison.rows.push_back({key.first, key.second,
                               totals.contains(key) ? std::to_string(totals[key]) : "",
                               FormatDouble(Mean(values)),
                               FormatDouble(ConfidenceHalfWidth95(values)),
                               std::to_string(values.size())});
  }
  emit("allocation_comparison.csv", comparison);

  // Variance study.
  CsvTable variance;
  variance.header = {"environment", "scenario", "b", "variance", "repeats", "loi_means"};
  for (const auto* entry : RequireStage(manifest, "variance", rerun)) {
    const json doc = json::parse(ReadTextFile(root / entry->path));
    for (const auto& pair : doc.at("pairs")) {
      for (const auto& p : pair.at("points")) {
        std::string means;
        for (const auto& v : p.at("loi_means")) {
          means += (means.empty() ? "" : ";") + FormatDouble(v.get<double>());
        }
        variance.rows.push_back({pair.at("environment").get<std::string>(),
                                 pair.at("scenario").get<std::string>(),
                                 std::to_string(p.at("b").get<int>()),
                                 FormatDouble(p.at("variance").get<double>()),
                                 std::to_string(pair.at("repeats").get<int>()), means});
      }
    }
  }
  emit("variance_study.csv", variance);
  return written;
}

}  // namespace loi::experiment
