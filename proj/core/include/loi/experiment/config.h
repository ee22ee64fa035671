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


#ifndef LOI_EXPERIMENT_CONFIG_H_
#define LOI_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loi/game/grid.h"
#include "loi/metric/loi.h"
#include "loi/train/trainer.h"

namespace loi::experiment {

struct EnvironmentSpec {
  std::string name;
  std::vector<std::vector<double>> row_payoff;
};

struct ScenarioSpec {
  std::string name;
  std::filesystem::path map;  // absolute after loading
};

struct GameSpec {
  game::GameRules rules;
  std::optional<int> episode_length;  // overrides the map header
};

// Step budgets are given at full scale and multiplied by `scale`.
struct TrainingSpec {
  double loi_policy_steps = 5e6;
  double eval_policy_steps = 1e7;
  int checkpoints_per_run = 25;
  train::LearnerKnobs learner;
  double discount_factor = 1.0;
};

struct EvaluationSpec {
  double fixed_bobs_steps = 5e6;
  std::vector<double> fixed_bobs_fractions{0.28, 0.52, 0.76, 1.0};
  int games_per_pair = 10;
  int sp_seeds = 5;
  std::vector<std::string> methods{"SP", "PP3", "PP5"};
};

struct AllocationSpec {
  bool enabled = true;
  double base_unit = 1e7;
};

struct VariancePair {
  std::string environment;
  std::string scenario;
};

struct VarianceSpec {
  bool enabled = false;
  std::vector<int> b_values{1, 2, 3, 4};
  int repeats = 5;
  std::vector<VariancePair> pairs;
};

struct ExperimentConfig {
  double scale = 0.01;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "runs";
  std::vector<EnvironmentSpec> environments;
  std::vector<ScenarioSpec> scenarios;
  GameSpec game;
  TrainingSpec training;
  metric::LoIConfig loi;
  EvaluationSpec evaluation;
  AllocationSpec allocation;
  VarianceSpec variance;

  // max(1, round(full_steps * scale)).
  std::int64_t Scaled(double full_steps) const;
  std::int64_t LoIPolicySteps() const { return Scaled(training.loi_policy_steps); }
  std::int64_t EvalPolicySteps() const { return Scaled(training.eval_policy_steps); }
  std::int64_t FixedBobsSteps() const { return Scaled(evaluation.fixed_bobs_steps); }
  std::int64_t BaseUnit() const { return Scaled(allocation.base_unit); }

  int EnvironmentIndex(std::string_view name) const;  // ConfigError lists names
  int ScenarioIndex(std::string_view name) const;

  // Environment for one (environment, scenario) cell.
  game::Environment MakeEnvironment(int environment, int scenario) const;

  // Self-play training template for that cell; seed and budget left to the
  // caller.
  train::TrainingConfig MakeTrainingConfig(int environment, int scenario,
                                           std::int64_t total_steps,
                                           int population_size,
                                           std::uint64_t seed) const;

  // Throws ConfigError on inconsistent settings or unreadable maps.
  void Validate() const;
};

// Parses a JSON document (comments allowed). Unknown keys are rejected.
// Relative map paths resolve against `base_dir`. Missing sections keep their
// defaults; a missing "environments" list means the four standard games.
ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical JSON echo of the configuration. output_dir is omitted so that
// the echo depends only on what determines results.
std::string ConfigEcho(const ExperimentConfig& config);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_CONFIG_H_
