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


#include <vector>

#include "gtest/gtest.h"
#include "loi/common/errors.h"
#include "loi/common/random.h"
#include "loi/game/grid.h"
#include "loi/game/scenario.h"
#include "loi/policy/rollout.h"
#include "loi/train/trainer.h"

namespace loi::train {
namespace {

using policy::PolicyParams;

game::Environment ShortEnv(int episode_length = 20) {
  auto payoff = game::PayoffMatrix::Chicken();
  const std::string text = "name = room\nepisode_length = " +
                           std::to_string(episode_length) +
                           "\nrandom a = {0,1}\n*.0a1.\n.1..0.\na.00.a\n"
                           ".1..1a\n0.a1..\n.1.0.*\n";
  auto map = game::LoadScenario(text, payoff);
  return game::Environment(std::move(map), std::move(payoff));
}

TrainingConfig Config(std::int64_t total, std::int64_t interval, int p,
                      std::uint64_t seed = 1) {
  TrainingConfig c;
  c.scenario_id = "room";
  c.environment_id = "chicken";
  c.total_steps = total;
  c.save_interval = interval;
  c.population_size = p;
  c.seed = seed;
  return c;
}

std::vector<std::string> Fingerprints(const TrainingReport& r) {
  std::vector<std::string> out;
  for (const auto& pool : r.pools) {
    for (const auto& c : pool.checkpoints) out.push_back(c.fingerprint);
  }
  return out;
}

TEST(TrainingConfigTest, RejectsInvalidBudgets) {
  EXPECT_NO_THROW(Config(50000, 2000, 1).Validate());
  EXPECT_THROW(Config(1000, 2000, 1).Validate(), ConfigError);
  EXPECT_THROW(Config(1000, 0, 1).Validate(), ConfigError);
  EXPECT_THROW(Config(1000, 100, 0).Validate(), ConfigError);
  auto c = Config(1000, 100, 1);
  c.discount_factor = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.discount_factor = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = Config(1000, 100, 1);
  c.learner.episodes_per_eval = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(TrainTest, SelfPlaySavesOnCadence) {
  const auto env = ShortEnv();
  const auto report = Train(Config(50000, 2000, 1), env);
  ASSERT_EQ(report.pools.size(), 1u);
  const auto& pool = report.pools[0];
  ASSERT_EQ(pool.size(), 25u);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    EXPECT_EQ(pool.checkpoints[i].step_index, 2000 * static_cast<std::int64_t>(i + 1));
  }
  EXPECT_EQ(report.reward_curve[0].size(), pool.size());
  EXPECT_EQ(report.wall_steps, 50000);
  EXPECT_EQ(pool.scenario_id, "room");
  EXPECT_EQ(pool.environment_id, "chicken");
}

TEST(TrainTest, SameSeedSameFingerprints) {
  const auto env = ShortEnv();
  const auto a = Train(Config(20000, 2000, 3, 5), env);
  const auto b = Train(Config(20000, 2000, 3, 5), env);
  EXPECT_EQ(Fingerprints(a), Fingerprints(b));
  EXPECT_EQ(a.co_player_sources, b.co_player_sources);
  const auto c = Train(Config(20000, 2000, 3, 6), env);
  EXPECT_NE(Fingerprints(a), Fingerprints(c));
}

TEST(TrainTest, ParallelMatchesSerial) {
  const auto env = ShortEnv();
  const auto serial = Train(Config(20000, 2000, 3, 5), env, 1);
  const auto parallel = Train(Config(20000, 2000, 3, 5), env, 3);
  EXPECT_EQ(Fingerprints(serial), Fingerprints(parallel));
  EXPECT_EQ(serial.reward_curve, parallel.reward_curve);
  EXPECT_EQ(serial.wall_steps, parallel.wall_steps);
}

TEST(TrainTest, PopulationCostScalesWithP) {
  const auto env = ShortEnv();
  const auto report = Train(Config(10000, 1000, 3), env);
  EXPECT_EQ(report.pools.size(), 3u);
  EXPECT_EQ(report.wall_steps, 3 * 10000);
}

TEST(TrainTest, BudgetTailIsCountedButDiscarded) {
  // 2 * 20 steps per update; 1030 leaves a 30-step tail.
  const auto env = ShortEnv();
  const auto report = Train(Config(1030, 103, 2), env);
  EXPECT_EQ(report.wall_steps, 2 * 1030);
  EXPECT_EQ(report.pools[0].size(), 10u);
  EXPECT_EQ(report.pools[0].latest().step_index, 1030);
}

TEST(TrainTest, SingleMemberPopulationIsSelfPlay) {
  const auto env = ShortEnv();
  const auto report = Train(Config(8000, 800, 1), env);
  for (const auto& sources : report.co_player_sources) {
    EXPECT_EQ(sources, std::vector<int>{0});
  }
}

TEST(TrainTest, CoPlayerSourcesAreUniform) {
  const auto env = ShortEnv();
  const int p = 5;
  const auto report = Train(Config(60000, 200, p, 9), env);
  std::vector<int> counts(p, 0);
  int n = 0;
  for (const auto& sources : report.co_player_sources) {
    for (int s : sources) {
      ++counts[s];
      ++n;
    }
  }
  ASSERT_EQ(n, 300 * p);
  const double se = std::sqrt(0.2 * 0.8 / n);
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(n), 0.2, 3 * se);
}

TEST(TrainTest, MismatchedIdsAreConfigErrors) {
  const auto env = ShortEnv();
  auto c = Config(1000, 100, 1);
  c.scenario_id = "elsewhere";
  EXPECT_THROW(Train(c, env), ConfigError);
  c = Config(1000, 100, 1);
  c.environment_id = "stag_hunt";
  EXPECT_THROW(Train(c, env), ConfigError);
}

PolicyParams Fixed(double zap) {
  PolicyParams p;
  p.resource_weights = {0.8, 0.3};
  p.zap_propensity = zap;
  p.exploration_temperature = 0.3;
  p.approach_weight = 0.5;
  return p;
}

TEST(LearnerUpdateTest, NullMutationKeepsParams) {
  const auto env = ShortEnv(100);
  Rng rng(1);
  const std::vector<std::uint64_t> seeds{1, 2};
  LearnerKnobs knobs;
  knobs.mutation_scale = 0.0;
  const auto r = LearnerUpdate(Fixed(0.6), Fixed(0.6), env, rng, seeds, knobs, 1.0);
  EXPECT_EQ(r.params, Fixed(0.6));
  EXPECT_FALSE(r.adopted);
  EXPECT_EQ(r.candidate_score, r.incumbent_score);
  EXPECT_EQ(r.steps, 2 * 2 * 100);
}

TEST(LearnerUpdateTest, UndiscountedScoreIsEpisodeReward) {
  const auto env = ShortEnv(100);
  Rng rng(3);
  const std::vector<std::uint64_t> seeds{4, 5, 6};
  const auto r = LearnerUpdate(Fixed(0.9), Fixed(0.7), env, rng, seeds, {}, 1.0);
  double expected = 0.0;
  for (auto s : seeds) expected += policy::PlayEpisode(env, Fixed(0.9), Fixed(0.7), s).returns[0];
  EXPECT_DOUBLE_EQ(r.incumbent_score, expected / 3);
  if (!r.adopted) EXPECT_DOUBLE_EQ(r.mean_return, expected / 3);
}

TEST(LearnerUpdateTest, AdoptsExactlyWhenCandidateScoresHigher) {
  const auto env = ShortEnv(100);
  Rng rng(8);
  int adopted = 0;
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const std::vector<std::uint64_t> seeds{trial};
    LearnerKnobs knobs;
    knobs.mutation_scale = 0.5;
    const auto r = LearnerUpdate(Fixed(0.5), Fixed(0.8), env, rng, seeds, knobs, 0.99);
    EXPECT_EQ(r.adopted, r.candidate_score > r.incumbent_score);
    EXPECT_EQ(r.params == Fixed(0.5), !r.adopted);
    adopted += r.adopted;
  }
  EXPECT_GT(adopted, 0);
  EXPECT_LT(adopted, 40);
}

TEST(LearnerUpdateTest, IncumbentScoreIsMonotoneUnderFixedSeeds) {
  const auto env = ShortEnv(100);
  Rng rng(21);
  const std::vector<std::uint64_t> seeds{11, 12};
  LearnerKnobs knobs;
  knobs.mutation_scale = 0.4;
  PolicyParams current = Fixed(0.2);
  double last = -INFINITY;
  for (int i = 0; i < 30; ++i) {
    const auto r = LearnerUpdate(current, Fixed(0.8), env, rng, seeds, knobs, 1.0);
    EXPECT_GE(r.incumbent_score, last);
    last = std::max(r.incumbent_score, r.candidate_score);
    current = r.params;
  }
}

}  // namespace
}  // namespace loi::train
