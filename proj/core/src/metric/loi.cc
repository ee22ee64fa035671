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


#include "loi/metric/loi.h"

#include <cmath>

#include "loi/common/errors.h"
#include "loi/common/parallel.h"
#include "loi/policy/rollout.h"

namespace loi::metric {

using policy::Checkpoint;
using policy::CheckpointPool;

RewardHistogram RewardDistribution(const Checkpoint& alice, const Checkpoint& bob,
                                   const game::Environment& env, int g,
                                   double bin_width, double origin,
                                   std::uint64_t seed) {
  if (g < 1) throw ValidationError("game count must be >= 1");
  std::vector<double> rewards(g);
  for (int l = 0; l < g; ++l) {
    rewards[l] = policy::PlayEpisode(env, alice.params, bob.params,
                                     DeriveSeed(seed, "game", {static_cast<std::uint64_t>(l)}))
                     .returns[0];
  }
  return RewardHistogram::FromSamples(rewards, bin_width, origin);
}

void LoIConfig::Validate() const {
  if (a < 1 || b < 1 || m < 1 || n < 1 || g < 1) {
    throw ConfigError("LoI counts a, b, m, n, g must all be >= 1");
  }
  if (!(bin_width > 0.0)) throw ConfigError("bin_width must be positive");
}

namespace {

struct Cell {
  int i;
  int k;
  int j;  // -1 for pooled
  Checkpoint alice;
  std::vector<Checkpoint> bobs;
  std::vector<int> bob_policy;
};

}  // namespace

LoIEstimate EstimateLoI(std::span<const CheckpointPool> alice_pools,
                        std::span<const CheckpointPool> bob_pools,
                        const LoIConfig& config, const game::Environment& env,
                        int jobs) {
  config.Validate();
  if (static_cast<int>(alice_pools.size()) != config.a) {
    throw ConfigError("expected " + std::to_string(config.a) + " Alice pools, got " +
                      std::to_string(alice_pools.size()));
  }
  if (static_cast<int>(bob_pools.size()) != config.b) {
    throw ConfigError("expected " + std::to_string(config.b) + " Bob pools, got " +
                      std::to_string(bob_pools.size()));
  }

  // Sampling is sequential and seeded per cell; only the games run in
  // parallel.
  std::vector<Cell> cells;
  for (int i = 0; i < config.a; ++i) {
    const auto ui = static_cast<std::uint64_t>(i);
    Rng alice_rng(DeriveSeed(config.seed, "alice", {ui}));
    const auto alices = policy::SampleCheckpoints(
        alice_pools[i], {static_cast<std::size_t>(config.m), config.alice_stage, {}},
        alice_rng);
    for (int k = 0; k < config.m; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      Cell pooled{i, k, -1, alices[k], {}, {}};
      for (int j = 0; j < config.b; ++j) {
        Rng bob_rng(DeriveSeed(config.seed, "bob",
                               {ui, uk, static_cast<std::uint64_t>(j)}));
        auto bobs = policy::SampleCheckpoints(
            bob_pools[j], {static_cast<std::size_t>(config.n), config.bob_stage, {}},
            bob_rng);
        if (config.pool_bobs_across_policies) {
          for (auto& bob : bobs) {
            pooled.bobs.push_back(std::move(bob));
            pooled.bob_policy.push_back(j);
          }
        } else {
          cells.push_back({i, k, j, alices[k], std::move(bobs),
                           std::vector<int>(config.n, j)});
        }
      }
      if (config.pool_bobs_across_policies) cells.push_back(std::move(pooled));
    }
  }

  struct CellResult {
    double mi = 0.0;
    std::vector<RewardHistogram> conditionals;
  };
  std::vector<CellResult> results(cells.size());
  ParallelFor(cells.size(), jobs, [&](std::size_t c) {
    const Cell& cell = cells[c];
    std::vector<RewardHistogram> conditionals;
    conditionals.reserve(cell.bobs.size());
    for (std::size_t l = 0; l < cell.bobs.size(); ++l) {
      const std::uint64_t seed = DeriveSeed(
          config.seed, "game",
          {static_cast<std::uint64_t>(cell.i), static_cast<std::uint64_t>(cell.k),
           static_cast<std::uint64_t>(cell.bob_policy[l]),
           static_cast<std::uint64_t>(l)});
      conditionals.push_back(RewardDistribution(cell.alice, cell.bobs[l], env,
                                                config.g, config.bin_width,
                                                config.origin, seed));
    }
    const std::vector<double> weights(conditionals.size(),
                                      1.0 / static_cast<double>(conditionals.size()));
    results[c].mi = MutualInformation(conditionals, weights);
    if (config.keep_histograms) results[c].conditionals = std::move(conditionals);
  });

  LoIEstimate estimate;
  estimate.config = config;
  estimate.scenario_id = env.scenario().name;
  estimate.environment_id = env.payoff().name();
  double sum = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    estimate.samples.push_back({cells[c].i, cells[c].j, cells[c].k, results[c].mi});
    sum += results[c].mi;
    for (std::size_t l = 0; l < results[c].conditionals.size(); ++l) {
      estimate.histograms.push_back(
          {cells[c].i, cells[c].k, cells[c].bob_policy[l], static_cast<int>(l),
           cells[c].alice.step_index, cells[c].bobs[l].step_index,
           results[c].conditionals[l]});
    }
  }
  const double count = static_cast<double>(estimate.samples.size());
  estimate.mean = sum / count;
  double sq = 0.0;
  for (const auto& s : estimate.samples) sq += (s.mi - estimate.mean) * (s.mi - estimate.mean);
  estimate.std = std::sqrt(sq / count);
  return estimate;
}

std::vector<VariancePoint> LoIVarianceStudy(const VarianceStudyConfig& config,
                                            const game::Environment& env,
                                            int jobs) {
  if (config.repeats < 2) throw ConfigError("variance study needs repeats >= 2");
  if (config.b_values.empty()) throw ConfigError("variance study needs b values");
  std::vector<VariancePoint> points;
  for (int b : config.b_values) {
    if (b < 1) throw ConfigError("Bob population sizes must be >= 1");
    VariancePoint point;
    point.b = b;
    const int total = config.loi.a + b;
    for (int r = 0; r < config.repeats; ++r) {
      const std::uint64_t repeat_seed = DeriveSeed(
          config.seed, "variance",
          {static_cast<std::uint64_t>(b),
           static_cast<std::uint64_t>(config.independent_repeats ? r : 0)});
      std::vector<CheckpointPool> pools(total);
      ParallelFor(static_cast<std::size_t>(total), jobs, [&](std::size_t x) {
        train::TrainingConfig training = config.training;
        training.population_size = 1;
        training.seed = DeriveSeed(repeat_seed, "policy", {x});
        pools[x] = train::Train(training, env).pools[0];
      });
      LoIConfig loi = config.loi;
      loi.b = b;
      loi.seed = DeriveSeed(repeat_seed, "loi");
      const std::span<const CheckpointPool> all(pools);
      point.loi_means.push_back(
          EstimateLoI(all.first(config.loi.a), all.subspan(config.loi.a), loi, env, jobs)
              .mean);
    }
    double mean = 0.0;
    for (double v : point.loi_means) mean += v;
    mean /= point.loi_means.size();
    double sq = 0.0;
    for (double v : point.loi_means) sq += (v - mean) * (v - mean);
    point.variance = sq / point.loi_means.size();
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace loi::metric
