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


#ifndef LOI_TRAIN_TRAINER_H_
#define LOI_TRAIN_TRAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loi/common/random.h"
#include "loi/game/grid.h"
#include "loi/policy/checkpoint.h"
#include "loi/policy/policy.h"

namespace loi::train {

// (1+1) hill-climbing knobs.
struct LearnerKnobs {
  double mutation_scale = 0.2;
  int episodes_per_eval = 1;
};

struct TrainingConfig {
  std::string scenario_id;
  std::string environment_id;
  std::int64_t total_steps = 0;
  std::int64_t save_interval = 0;
  int population_size = 1;  // 1 is self-play
  std::uint64_t seed = 0;
  double discount_factor = 1.0;
  LearnerKnobs learner;

  // Throws ConfigError on an invalid budget, population or discount.
  void Validate() const;
};

struct LearnerResult {
  policy::PolicyParams params;
  // Undiscounted mean episode reward of the returned params.
  double mean_return = 0.0;
  // Mean discounted returns that decided the comparison.
  double incumbent_score = 0.0;
  double candidate_score = 0.0;
  bool adopted = false;
  std::int64_t steps = 0;
};

// One hill-climbing step. Incumbent and candidate play the same episode
// seeds (one per entry of episode_seeds) against the fixed co-player; the
// candidate replaces the incumbent only if its mean discounted return is
// strictly higher.
LearnerResult LearnerUpdate(const policy::PolicyParams& current,
                            const policy::PolicyParams& co_player,
                            const game::Environment& env, Rng& mutation_rng,
                            std::span<const std::uint64_t> episode_seeds,
                            const LearnerKnobs& knobs, double discount_factor);

struct TrainingReport {
  std::vector<policy::CheckpointPool> pools;
  // reward_curve[q][s]: mean episode reward of population q over the updates
  // that finished before save s; empty when no update finished in time.
  std::vector<std::vector<std::optional<double>>> reward_curve;
  // co_player_sources[s][q]: population whose checkpoint q adopted at save s.
  std::vector<std::vector<int>> co_player_sources;
  std::int64_t wall_steps = 0;

  // Population average of reward_curve per save.
  std::vector<std::optional<double>> MeanRewardCurve() const;
};

// Self-play when population_size == 1, population play otherwise. Every
// population consumes exactly total_steps environment steps; saves happen at
// each multiple of save_interval, after which every co-player adopts the
// latest checkpoint of a uniformly chosen population (itself in self-play).
// `jobs` parallelizes across populations without changing results.
TrainingReport Train(const TrainingConfig& config, const game::Environment& env,
                     int jobs = 1);

}  // namespace loi::train

#endif  // LOI_TRAIN_TRAINER_H_
