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

#include "loi/policy/rollout.h"

#include <algorithm>

namespace loi::policy {

EpisodeOutcome PlayEpisode(const game::Environment& env, const PolicyParams& ego,
                           const PolicyParams& other, std::uint64_t seed,
                           double discount, std::int64_t max_steps) {
  game::GridState state = env.Reset(DeriveSeed(seed, "env"));
  std::array<Rng, game::kNumAgents> streams{Rng(DeriveSeed(seed, "agent", {0})),
                                            Rng(DeriveSeed(seed, "agent", {1}))};
  const std::array<const PolicyParams*, game::kNumAgents> policies{&ego, &other};
  std::int64_t limit = env.episode_length();
  if (max_steps >= 0) limit = std::min(limit, max_steps);

  EpisodeOutcome outcome;
  std::array<game::Observation, game::kNumAgents> obs;
  std::array<game::Action, game::kNumAgents> actions{};
  double weight = 1.0;
  for (std::int64_t t = 0; t < limit; ++t) {
    for (int a = 0; a < game::kNumAgents; ++a) {
      env.ObserveInto(state, a, &obs[a]);
      actions[a] = Act(*policies[a], obs[a], streams[a]);
    }
    const game::StepResult step = env.Step(state, actions);
    for (int a = 0; a < game::kNumAgents; ++a) {
      outcome.returns[a] += step.rewards[a];
      outcome.discounted_returns[a] += weight * step.rewards[a];
    }
    outcome.interactions += static_cast<int>(step.events.interactions.size());
    outcome.collections += static_cast<int>(step.events.collections.size());
    weight *= discount;
  }
  outcome.steps = limit;
  return outcome;
}

}  // namespace loi::policy
