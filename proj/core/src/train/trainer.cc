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


#include "loi/train/trainer.h"

#include <algorithm>
#include <cmath>

#include "loi/common/errors.h"
#include "loi/common/parallel.h"
#include "loi/policy/rollout.h"

namespace loi::train {

using policy::PolicyParams;

void TrainingConfig::Validate() const {
  if (save_interval <= 0) throw ConfigError("save_interval must be positive");
  if (total_steps < save_interval) {
    throw ConfigError("total_steps (" + std::to_string(total_steps) +
                      ") is below save_interval (" +
                      std::to_string(save_interval) + ")");
  }
  if (population_size < 1) throw ConfigError("population_size must be >= 1");
  if (!(discount_factor > 0.0 && discount_factor <= 1.0)) {
    throw ConfigError("discount_factor must lie in (0, 1]");
  }
  if (learner.episodes_per_eval < 1) {
    throw ConfigError("episodes_per_eval must be >= 1");
  }
  if (!(learner.mutation_scale >= 0.0) || !std::isfinite(learner.mutation_scale)) {
    throw ConfigError("mutation_scale must be a non-negative number");
  }
}

LearnerResult LearnerUpdate(const PolicyParams& current,
                            const PolicyParams& co_player,
                            const game::Environment& env, Rng& mutation_rng,
                            std::span<const std::uint64_t> episode_seeds,
                            const LearnerKnobs& knobs, double discount_factor) {
  const PolicyParams candidate =
      policy::Mutate(current, knobs.mutation_scale, mutation_rng);
  LearnerResult result;
  double incumbent_raw = 0.0;
  double candidate_raw = 0.0;
  for (std::uint64_t seed : episode_seeds) {
    const auto a = policy::PlayEpisode(env, current, co_player, seed, discount_factor);
    const auto b = policy::PlayEpisode(env, candidate, co_player, seed, discount_factor);
    result.incumbent_score += a.discounted_returns[0];
    result.candidate_score += b.discounted_returns[0];
    incumbent_raw += a.returns[0];
    candidate_raw += b.returns[0];
    result.steps += a.steps + b.steps;
  }
  const double n = static_cast<double>(episode_seeds.size());
  result.incumbent_score /= n;
  result.candidate_score /= n;
  result.adopted = result.candidate_score > result.incumbent_score;
  result.params = result.adopted ? candidate : current;
  result.mean_return = (result.adopted ? candidate_raw : incumbent_raw) / n;
  return result;
}

std::vector<std::optional<double>> TrainingReport::MeanRewardCurve() const {
  std::vector<std::optional<double>> out;
  if (reward_curve.empty()) return out;
  for (std::size_t s = 0; s < reward_curve[0].size(); ++s) {
    double sum = 0.0;
    int count = 0;
    for (const auto& curve : reward_curve) {
      if (curve[s]) {
        sum += *curve[s];
        ++count;
      }
    }
    out.push_back(count > 0 ? std::optional<double>(sum / count) : std::nullopt);
  }
  return out;
}

namespace {

struct Member {
  PolicyParams params;
  PolicyParams co_player;
  Rng mutation_rng{0};
  double reward_sum = 0.0;
  int reward_count = 0;
};

}  // namespace

TrainingReport Train(const TrainingConfig& config, const game::Environment& env,
                     int jobs) {
  config.Validate();
  if (config.scenario_id != env.scenario().name) {
    throw ConfigError("training scenario '" + config.scenario_id +
                      "' does not match environment scenario '" +
                      env.scenario().name + "'");
  }
  if (config.environment_id != env.payoff().name()) {
    throw ConfigError("training environment '" + config.environment_id +
                      "' does not match payoff '" + env.payoff().name() + "'");
  }

  // A private copy so that the step audit is not disturbed by other users.
  const game::Environment local(env);
  const std::uint64_t audit_start = local.steps_simulated();

  const int p = config.population_size;
  const int k = local.payoff().k();
  const std::int64_t episode_length = local.episode_length();
  const std::int64_t round_cost =
      2 * static_cast<std::int64_t>(config.learner.episodes_per_eval) * episode_length;
  const std::int64_t saves = config.total_steps / config.save_interval;

  TrainingReport report;
  report.pools.resize(p);
  report.reward_curve.resize(p);
  std::vector<Member> members(p);
  for (int q = 0; q < p; ++q) {
    auto& pool = report.pools[q];
    pool.run_id = config.scenario_id + "/" + config.environment_id + "/seed" +
                  std::to_string(config.seed) + "/pop" + std::to_string(q);
    pool.scenario_id = config.scenario_id;
    pool.environment_id = config.environment_id;
    pool.total_steps = config.total_steps;
    Rng init(DeriveSeed(config.seed, "init", {static_cast<std::uint64_t>(q)}));
    members[q].params = policy::RandomParams(k, init);
    members[q].mutation_rng =
        Rng(DeriveSeed(config.seed, "mutate", {static_cast<std::uint64_t>(q)}));
  }
  Rng exchange(DeriveSeed(config.seed, "exchange"));
  for (int q = 0; q < p; ++q) {
    const auto source = static_cast<int>(exchange.UniformInt(p));
    members[q].co_player = members[source].params;
  }

  std::int64_t consumed = 0;
  std::int64_t next_save = 1;
  std::uint64_t round = 0;
  auto save_crossed = [&] {
    while (next_save <= saves && next_save * config.save_interval <= consumed) {
      const std::int64_t step = next_save * config.save_interval;
      for (int q = 0; q < p; ++q) {
        Member& m = members[q];
        report.pools[q].Save(m.params, step);
        report.reward_curve[q].push_back(
            m.reward_count > 0 ? std::optional<double>(m.reward_sum / m.reward_count)
                               : std::nullopt);
        m.reward_sum = 0.0;
        m.reward_count = 0;
      }
      std::vector<int> sources(p);
      for (int q = 0; q < p; ++q) {
        sources[q] = static_cast<int>(exchange.UniformInt(p));
        members[q].co_player = report.pools[sources[q]].latest().params;
      }
      report.co_player_sources.push_back(std::move(sources));
      ++next_save;
    }
  };

  while (consumed + round_cost <= config.total_steps) {
    ParallelFor(static_cast<std::size_t>(p), jobs, [&](std::size_t q) {
      Member& m = members[q];
      std::vector<std::uint64_t> seeds(config.learner.episodes_per_eval);
      for (std::size_t e = 0; e < seeds.size(); ++e) {
        seeds[e] = DeriveSeed(config.seed, "learn", {q, round, e});
      }
      const LearnerResult r =
          LearnerUpdate(m.params, m.co_player, local, m.mutation_rng, seeds,
                        config.learner, config.discount_factor);
      m.params = r.params;
      m.reward_sum += r.mean_return;
      ++m.reward_count;
    });
    consumed += round_cost;
    ++round;
    save_crossed();
  }

  // The tail of the budget is too short for a full update. It is still
  // played (and counted) but its rewards are discarded.
  const std::int64_t leftover = config.total_steps - consumed;
  if (leftover > 0) {
    ParallelFor(static_cast<std::size_t>(p), jobs, [&](std::size_t q) {
      const Member& m = members[q];
      std::int64_t remaining = leftover;
      std::uint64_t e = 0;
      while (remaining > 0) {
        const auto outcome = policy::PlayEpisode(
            local, m.params, m.co_player,
            DeriveSeed(config.seed, "tail", {q, e++}), config.discount_factor,
            remaining);
        remaining -= outcome.steps;
      }
    });
    consumed = config.total_steps;
    save_crossed();
  }

  report.wall_steps = static_cast<std::int64_t>(local.steps_simulated() - audit_start);
  return report;
}

}  // namespace loi::train
