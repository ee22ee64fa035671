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


#include <benchmark/benchmark.h>

#include <vector>

#include "loi/alloc/allocator.h"
#include "loi/common/random.h"
#include "loi/game/grid.h"
#include "loi/game/payoff.h"
#include "loi/game/scenario.h"
#include "loi/metric/histogram.h"
#include "loi/policy/policy.h"
#include "loi/policy/rollout.h"
#include "loi/stats/hypothesis.h"

namespace {

loi::game::Environment MakeEnv(const char* map) {
  const auto payoff = loi::game::PayoffMatrix::Chicken();
  auto scenario =
      loi::game::LoadScenarioFile(std::string(LOI_MAPS_DIR) + "/" + map, payoff);
  return loi::game::Environment(std::move(scenario), payoff);
}

void BM_GridStep(benchmark::State& state) {
  const auto env = MakeEnv("small.map");
  loi::Rng rng(1);
  auto s = env.Reset(1);
  std::array<loi::game::Action, 2> actions{};
  for (auto _ : state) {
    if (env.IsTerminal(s)) s = env.Reset(rng.NextU64());
    actions[0] = static_cast<loi::game::Action>(rng.UniformInt(loi::game::kNumActions));
    actions[1] = static_cast<loi::game::Action>(rng.UniformInt(loi::game::kNumActions));
    benchmark::DoNotOptimize(env.Step(s, actions));
  }
}
BENCHMARK(BM_GridStep);

void BM_ActionProbabilities(benchmark::State& state) {
  const auto env = MakeEnv("small.map");
  loi::Rng rng(2);
  const auto params = loi::policy::RandomParams(2, rng);
  const auto s = env.Reset(3);
  const auto obs = env.Observe(s, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loi::policy::ActionProbabilities(params, obs));
  }
}
BENCHMARK(BM_ActionProbabilities);

void BM_PlayEpisode(benchmark::State& state) {
  const auto env = MakeEnv(state.range(0) == 0 ? "small.map" : "large.map");
  loi::Rng rng(4);
  const auto a = loi::policy::RandomParams(2, rng);
  const auto b = loi::policy::RandomParams(2, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loi::policy::PlayEpisode(env, a, b, seed++));
  }
  state.SetItemsProcessed(state.iterations() * env.episode_length());
}
BENCHMARK(BM_PlayEpisode)->Arg(0)->Arg(1);

void BM_MutualInformation(benchmark::State& state) {
  loi::Rng rng(5);
  std::vector<loi::metric::RewardHistogram> conditionals;
  for (int t = 0; t < 9; ++t) {
    std::vector<double> rewards(6);
    for (double& r : rewards) r = static_cast<double>(rng.UniformInt(20));
    conditionals.push_back(loi::metric::RewardHistogram::FromSamples(rewards, 1.0, 0.0));
  }
  const std::vector<double> weights(9, 1.0 / 9.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loi::metric::MutualInformation(conditionals, weights));
  }
}
BENCHMARK(BM_MutualInformation);

void BM_IncompleteBeta(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loi::stats::RegularizedIncompleteBeta(4.5, 0.5, x));
    x = x < 0.99 ? x + 0.01 : 0.01;
  }
}
BENCHMARK(BM_IncompleteBeta);

void BM_Allocate(benchmark::State& state) {
  const std::vector<loi::alloc::ScenarioLoI> lois{
      {"small", 1.397}, {"medium", 1.431}, {"large", 1.424}, {"obstacle", 1.063}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(loi::alloc::Allocate(lois, 10'000'000));
  }
}
BENCHMARK(BM_Allocate);

}  // namespace

BENCHMARK_MAIN();
