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


#ifndef LOI_METRIC_LOI_H_
#define LOI_METRIC_LOI_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loi/game/grid.h"
#include "loi/metric/histogram.h"
#include "loi/policy/checkpoint.h"
#include "loi/train/trainer.h"

namespace loi::metric {

// Plays g episodes with `alice` in seat 0 against `bob` and histograms
// Alice's total episode reward. Game l uses DeriveSeed(seed, "game", {l}).
RewardHistogram RewardDistribution(const policy::Checkpoint& alice,
                                   const policy::Checkpoint& bob,
                                   const game::Environment& env, int g,
                                   double bin_width, double origin,
                                   std::uint64_t seed);

struct LoIConfig {
  int a = 1;  // Alice policies
  int b = 5;  // Bob policies
  int m = 4;  // Alice checkpoints per policy
  int n = 9;  // Bob checkpoints per policy
  int g = 6;  // games per Alice-Bob checkpoint pair
  policy::Stage alice_stage = policy::Stage::kLate;
  policy::Stage bob_stage = policy::Stage::kAll;
  double bin_width = 1.0;
  double origin = 0.0;
  std::uint64_t seed = 0;
  // Treat all b*n sampled Bob checkpoints as one distribution per Alice
  // checkpoint instead of one per Bob policy.
  bool pool_bobs_across_policies = false;
  bool keep_histograms = false;

  void Validate() const;
};

struct LoISample {
  int i = 0;  // Alice policy
  int j = 0;  // Bob policy; -1 when Bobs are pooled across policies
  int k = 0;  // Alice checkpoint
  double mi = 0.0;
};

struct PairHistogram {
  int i = 0;
  int k = 0;
  int j = 0;
  int l = 0;  // Bob checkpoint
  std::int64_t alice_step = 0;
  std::int64_t bob_step = 0;
  RewardHistogram histogram{1.0, 0.0};
};

struct LoIEstimate {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation of the samples
  std::vector<LoISample> samples;
  LoIConfig config;
  std::string scenario_id;
  std::string environment_id;
  std::vector<PairHistogram> histograms;  // filled when keep_histograms
};

// Level of Influence of the environment on Alice: for every Alice policy i
// and late-stage checkpoint k and every Bob policy j, the mutual information
// between Alice's reward and which of n sampled Bob checkpoints she faced,
// averaged over all (i, k, j). Sampling seeds derive from config.seed.
LoIEstimate EstimateLoI(std::span<const policy::CheckpointPool> alice_pools,
                        std::span<const policy::CheckpointPool> bob_pools,
                        const LoIConfig& config, const game::Environment& env,
                        int jobs = 1);

struct VarianceStudyConfig {
  std::vector<int> b_values{1, 2, 3, 4};
  int repeats = 5;
  LoIConfig loi;           // a, m, n, g and binning; b is overridden
  train::TrainingConfig training;  // self-play template; seed is overridden
  std::uint64_t seed = 0;
  // When false every repeat reuses the seeds of repeat 0.
  bool independent_repeats = true;
};

struct VariancePoint {
  int b = 0;
  std::vector<double> loi_means;
  double variance = 0.0;  // population variance of loi_means
};

// For each b, trains `repeats` fresh sets of a + b self-play pools and
// reports the spread of the resulting LoI means.
std::vector<VariancePoint> LoIVarianceStudy(const VarianceStudyConfig& config,
                                            const game::Environment& env,
                                            int jobs = 1);

}  // namespace loi::metric

#endif  // LOI_METRIC_LOI_H_
