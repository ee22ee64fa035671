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


#include "loi/policy/checkpoint.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_convert.h"
#include "loi/common/errors.h"
#include "loi/common/hash.h"

namespace loi::policy {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ParamsFingerprint(const PolicyParams& params) {
  Fnv1a64 h;
  h.UpdateU64(params.resource_weights.size());
  for (double w : params.resource_weights) h.UpdateDouble(w);
  h.UpdateDouble(params.zap_propensity);
  h.UpdateDouble(params.exploration_temperature);
  h.UpdateDouble(params.approach_weight);
  return HexU64(h.digest());
}

void CheckpointPool::Save(const PolicyParams& params, std::int64_t step_index) {
  if (!checkpoints.empty() && step_index <= checkpoints.back().step_index) {
    throw OrderingError("checkpoint step " + std::to_string(step_index) +
                        " does not exceed last saved step " +
                        std::to_string(checkpoints.back().step_index));
  }
  checkpoints.push_back(
      {params, step_index, run_id, ParamsFingerprint(params)});
}

std::string_view StageName(Stage stage) {
  return stage == Stage::kLate ? "late" : "all";
}

Stage ParseStage(std::string_view name) {
  if (name == "late") return Stage::kLate;
  if (name == "all") return Stage::kAll;
  throw ConfigError("unknown checkpoint stage '" + std::string(name) + "'");
}

std::span<const Checkpoint> EligibleCheckpoints(const CheckpointPool& pool,
                                                Stage stage) {
  std::span<const Checkpoint> all(pool.checkpoints);
  if (stage == Stage::kAll) return all;
  const std::size_t late = (all.size() + 3) / 4;
  return all.subspan(all.size() - late);
}

std::vector<Checkpoint> SampleCheckpoints(const CheckpointPool& pool,
                                          const SamplingSpec& spec, Rng& rng) {
  const std::span<const Checkpoint> eligible =
      EligibleCheckpoints(pool, spec.stage);
  std::vector<double> weights;
  if (spec.probabilities.empty()) {
    weights.assign(eligible.size(), 1.0);
  } else {
    if (spec.probabilities.size() != eligible.size()) {
      throw ValidationError("sampling weights do not match eligible checkpoints");
    }
    double sum = 0.0;
    for (double p : spec.probabilities) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ValidationError("sampling weights must be non-negative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ValidationError("sampling weights must sum to 1");
    }
    weights = spec.probabilities;
  }
  const auto available = static_cast<std::size_t>(
      std::count_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; }));
  if (spec.count > available) {
    throw InsufficientCheckpointsError(
        "requested " + std::to_string(spec.count) + " checkpoints from run '" +
        pool.run_id + "' but only " + std::to_string(available) +
        " are eligible");
  }

  std::vector<std::size_t> chosen;
  chosen.reserve(spec.count);
  for (std::size_t draw = 0; draw < spec.count; ++draw) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = rng.Uniform() * total;
    double cumulative = 0.0;
    std::size_t pick = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      pick = i;
      cumulative += weights[i];
      if (u < cumulative) break;
    }
    chosen.push_back(pick);
    weights[pick] = 0.0;
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<Checkpoint> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(eligible[i]);
  return out;
}

namespace {

std::string CheckpointFileName(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "ckpt_%04zu.json", index);
  return buf;
}

}  // namespace

void WritePool(const CheckpointPool& pool, const fs::path& dir) {
  fs::create_directories(dir);
  json files = json::array();
  for (std::size_t i = 0; i < pool.checkpoints.size(); ++i) {
    const Checkpoint& c = pool.checkpoints[i];
    const std::string name = CheckpointFileName(i);
    internal::WriteJsonFile(dir / name, json{{"run_id", c.run_id},
                                             {"step_index", c.step_index},
                                             {"fingerprint", c.fingerprint},
                                             {"params", c.params}});
    files.push_back(name);
  }
  internal::WriteJsonFile(dir / "manifest.json",
                          json{{"run_id", pool.run_id},
                               {"scenario_id", pool.scenario_id},
                               {"environment_id", pool.environment_id},
                               {"total_steps", pool.total_steps},
                               {"checkpoints", files}});
}

CheckpointPool ReadPool(const fs::path& dir) {
  const json manifest = internal::ReadJsonFile(dir / "manifest.json");
  CheckpointPool pool;
  try {
    pool.run_id = manifest.at("run_id").get<std::string>();
    pool.scenario_id = manifest.at("scenario_id").get<std::string>();
    pool.environment_id = manifest.at("environment_id").get<std::string>();
    pool.total_steps = manifest.at("total_steps").get<std::int64_t>();
    for (const auto& name : manifest.at("checkpoints")) {
      const json j = internal::ReadJsonFile(dir / name.get<std::string>());
      Checkpoint c;
      c.run_id = j.at("run_id").get<std::string>();
      c.step_index = j.at("step_index").get<std::int64_t>();
      c.fingerprint = j.at("fingerprint").get<std::string>();
      c.params = j.at("params").get<PolicyParams>();
      if (ParamsFingerprint(c.params) != c.fingerprint) {
        throw IntegrityError("checkpoint " + name.get<std::string>() + " in " +
                             dir.string() + " fails its fingerprint check");
      }
      if (!pool.checkpoints.empty() &&
          c.step_index <= pool.checkpoints.back().step_index) {
        throw OrderingError("checkpoints in " + dir.string() + " are out of order");
      }
      pool.checkpoints.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed pool in " + dir.string() + ": " + e.what());
  }
  return pool;
}

}  // namespace loi::policy
