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

#ifndef LOI_POLICY_ROLLOUT_H_
#define LOI_POLICY_ROLLOUT_H_

#include <array>
#include <cstdint>

#include "loi/game/grid.h"
#include "loi/policy/policy.h"

namespace loi::policy {

struct EpisodeOutcome {
  // Undiscounted episode reward of each seat.
  std::array<double, game::kNumAgents> returns{};
  // sum_t discount^t r_t for each seat.
  std::array<double, game::kNumAgents> discounted_returns{};
  std::int64_t steps = 0;
  int interactions = 0;
  int collections = 0;
};

// Plays one episode with `ego` in seat 0 and `other` in seat 1. The
// environment and both action streams are seeded from `seed`. max_steps < 0
// plays to the scenario's episode length; otherwise the episode is cut at
// min(max_steps, episode_length).
EpisodeOutcome PlayEpisode(const game::Environment& env, const PolicyParams& ego,
                           const PolicyParams& other, std::uint64_t seed,
                           double discount = 1.0, std::int64_t max_steps = -1);

}  // namespace loi::policy

#endif  // LOI_POLICY_ROLLOUT_H_
