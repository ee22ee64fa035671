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

#ifndef LOI_POLICY_POLICY_H_
#define LOI_POLICY_POLICY_H_

#include <array>
#include <vector>

#include "loi/common/random.h"
#include "loi/game/grid.h"

namespace loi::policy {

// A four-knob heuristic policy family.
struct PolicyParams {
  // Preference for each resource type; negative values repel.
  std::vector<double> resource_weights;
  // Probability of firing when the co-player stands in the beam line.
  double zap_propensity = 0.5;
  // Softmax temperature over action scores; must be positive.
  double exploration_temperature = 0.5;
  // Attraction toward (positive) or away from (negative) the co-player.
  double approach_weight = 0.0;

  // Throws ValidationError on non-finite fields, zap outside [0, 1] or a
  // non-positive temperature.
  void Validate() const;

  bool operator==(const PolicyParams&) const = default;
};

PolicyParams RandomParams(int k, Rng& rng);

// Gaussian perturbation of every field with standard deviation `scale`
// (multiplicative for the temperature). scale == 0 returns the input.
PolicyParams Mutate(const PolicyParams& params, double scale, Rng& rng);

using ActionDistribution = std::array<double, game::kNumActions>;

// Exact action distribution of the policy at an observation.
//
// Each non-fire action is scored by the best visible resource value
// w[type] / (1 + distance) from the cell it leads to, plus the approach term
// -approach_weight * distance(co-player) / (2r). Turns get a bonus of
// zap_propensity when they bring the co-player into the beam line. The fire
// action takes probability zap_propensity when the beam is ready and the
// co-player is in line; the remaining mass is a softmax over the other
// scores at exploration_temperature.
ActionDistribution ActionProbabilities(const PolicyParams& params,
                                       const game::Observation& obs);

// Samples from ActionProbabilities using exactly one draw from rng.
game::Action Act(const PolicyParams& params, const game::Observation& obs,
                 Rng& rng);

}  // namespace loi::policy

#endif  // LOI_POLICY_POLICY_H_
