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


#ifndef LOI_POLICY_CHECKPOINT_H_
#define LOI_POLICY_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "loi/common/random.h"
#include "loi/policy/policy.h"

namespace loi::policy {

// FNV-1a over the parameter values, rendered as 16 hex digits.
std::string ParamsFingerprint(const PolicyParams& params);

struct Checkpoint {
  PolicyParams params;
  std::int64_t step_index = 0;
  std::string run_id;
  std::string fingerprint;

  bool operator==(const Checkpoint&) const = default;
};

// Ordered checkpoints of one training run.
struct CheckpointPool {
  std::string run_id;
  std::string scenario_id;
  std::string environment_id;
  // Training budget of the run, used to locate fixed fractions of training.
  std::int64_t total_steps = 0;
  std::vector<Checkpoint> checkpoints;

  // Appends a checkpoint. Throws OrderingError unless step_index exceeds the
  // last saved index.
  void Save(const PolicyParams& params, std::int64_t step_index);

  std::size_t size() const { return checkpoints.size(); }
  bool empty() const { return checkpoints.empty(); }
  const Checkpoint& latest() const { return checkpoints.back(); }

  bool operator==(const CheckpointPool&) const = default;
};

enum class Stage {
  kLate,  // the last ceil(size / 4) checkpoints
  kAll,
};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

std::span<const Checkpoint> EligibleCheckpoints(const CheckpointPool& pool,
                                                Stage stage);

struct SamplingSpec {
  std::size_t count = 1;
  Stage stage = Stage::kAll;
  // Selection weights over the eligible checkpoints; empty means uniform.
  // Must sum to 1 within 1e-12.
  std::vector<double> probabilities;
};

// Draws spec.count distinct checkpoints, returned in ascending step order.
// Throws InsufficientCheckpointsError when fewer are eligible.
std::vector<Checkpoint> SampleCheckpoints(const CheckpointPool& pool,
                                          const SamplingSpec& spec, Rng& rng);

// Pool directories hold one JSON file per checkpoint plus manifest.json.
// Reading verifies every fingerprint and throws IntegrityError on mismatch.
void WritePool(const CheckpointPool& pool, const std::filesystem::path& dir);
CheckpointPool ReadPool(const std::filesystem::path& dir);

}  // namespace loi::policy

#endif  // LOI_POLICY_CHECKPOINT_H_
