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

#include "loi/policy/policy.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "loi/common/errors.h"

namespace loi::policy {

using game::Action;
using game::CellCode;
using game::Direction;
using game::Observation;

namespace {

constexpr double kMinTemperature = 0.01;
constexpr double kMaxTemperature = 10.0;

struct Visible {
  int dr;
  int dc;
  int type;
};

bool CoPlayerInLine(const Observation& obs, Direction facing) {
  const game::Position step = game::Offset(facing);
  for (int s = 1; s <= obs.radius; ++s) {
    const auto code = static_cast<CellCode>(obs.at(s * step.row, s * step.col));
    if (code == CellCode::kWall) return false;
    if (code == CellCode::kCoPlayer) return true;
  }
  return false;
}

}  // namespace

void PolicyParams::Validate() const {
  for (double w : resource_weights) {
    if (!std::isfinite(w)) throw ValidationError("resource weight is not finite");
  }
  if (!std::isfinite(zap_propensity) || zap_propensity < 0.0 ||
      zap_propensity > 1.0) {
    throw ValidationError("zap_propensity must lie in [0, 1]");
  }
  if (!std::isfinite(exploration_temperature) || exploration_temperature <= 0.0) {
    throw ValidationError("exploration_temperature must be positive");
  }
  if (!std::isfinite(approach_weight)) {
    throw ValidationError("approach_weight is not finite");
  }
}

PolicyParams RandomParams(int k, Rng& rng) {
  PolicyParams p;
  p.resource_weights.resize(k);
  for (double& w : p.resource_weights) w = 2.0 * rng.Uniform() - 1.0;
  p.zap_propensity = rng.Uniform();
  const double lo = std::log(0.05);
  const double hi = std::log(1.0);
  p.exploration_temperature = std::exp(lo + (hi - lo) * rng.Uniform());
  p.approach_weight = 2.0 * rng.Uniform() - 1.0;
  return p;
}

PolicyParams Mutate(const PolicyParams& params, double scale, Rng& rng) {
  PolicyParams out = params;
  for (double& w : out.resource_weights) w += scale * rng.Normal();
  out.zap_propensity =
      std::clamp(out.zap_propensity + scale * rng.Normal(), 0.0, 1.0);
  out.exploration_temperature =
      std::clamp(out.exploration_temperature * std::exp(scale * rng.Normal()),
                 kMinTemperature, kMaxTemperature);
  out.approach_weight += scale * rng.Normal();
  return out;
}

ActionDistribution ActionProbabilities(const PolicyParams& params,
                                       const Observation& obs) {
  ActionDistribution probs{};
  if (obs.respawning) {
    probs[static_cast<int>(Action::kNoop)] = 1.0;
    return probs;
  }

  const int r = obs.radius;
  std::vector<Visible> resources;
  bool co_visible = false;
  int co_dr = 0;
  int co_dc = 0;
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      const int code = obs.at(dr, dc);
      if (code == static_cast<int>(CellCode::kCoPlayer)) {
        co_visible = true;
        co_dr = dr;
        co_dc = dc;
      } else if (code >= static_cast<int>(CellCode::kResource)) {
        const int type = code - static_cast<int>(CellCode::kResource);
        if (type < static_cast<int>(params.resource_weights.size())) {
          resources.push_back({dr, dc, type});
        }
      }
    }
  }

  const double approach_norm = r > 0 ? 2.0 * r : 1.0;
  auto value_at = [&](int pr, int pc) {
    double best = 0.0;
    bool any = false;
    for (const Visible& v : resources) {
      const double value = params.resource_weights[v.type] /
                           (1.0 + std::abs(pr - v.dr) + std::abs(pc - v.dc));
      if (!any || value > best) {
        best = value;
        any = true;
      }
    }
    if (co_visible) {
      const int dist = std::abs(pr - co_dr) + std::abs(pc - co_dc);
      best -= params.approach_weight * dist / approach_norm;
    }
    return best;
  };

  std::array<double, game::kNumActions> scores{};
  const double here = value_at(0, 0);
  scores[static_cast<int>(Action::kNoop)] = here;
  for (Action a : {Action::kMoveNorth, Action::kMoveSouth, Action::kMoveEast,
                   Action::kMoveWest}) {
    const game::Position step = game::Offset(*game::MoveDirection(a));
    double score = here;
    if (r >= 1) {
      const auto code = static_cast<CellCode>(obs.at(step.row, step.col));
      if (code != CellCode::kWall && code != CellCode::kCoPlayer) {
        score = value_at(step.row, step.col);
      }
    }
    scores[static_cast<int>(a)] = score;
  }
  const bool ready = obs.beam_cooldown == 0;
  const double turn_bonus = ready ? params.zap_propensity : 0.0;
  scores[static_cast<int>(Action::kTurnLeft)] =
      here + (CoPlayerInLine(obs, game::TurnLeft(obs.facing)) ? turn_bonus : 0.0);
  scores[static_cast<int>(Action::kTurnRight)] =
      here + (CoPlayerInLine(obs, game::TurnRight(obs.facing)) ? turn_bonus : 0.0);

  const int fire = static_cast<int>(Action::kFire);
  const double p_fire =
      ready && CoPlayerInLine(obs, obs.facing) ? params.zap_propensity : 0.0;

  double max_score = -INFINITY;
  for (int a = 0; a < game::kNumActions; ++a) {
    if (a != fire) max_score = std::max(max_score, scores[a]);
  }
  double total = 0.0;
  for (int a = 0; a < game::kNumActions; ++a) {
    if (a == fire) continue;
    probs[a] = std::exp((scores[a] - max_score) / params.exploration_temperature);
    total += probs[a];
  }
  for (int a = 0; a < game::kNumActions; ++a) {
    if (a != fire) probs[a] *= (1.0 - p_fire) / total;
  }
  probs[fire] = p_fire;
  return probs;
}

Action Act(const PolicyParams& params, const Observation& obs, Rng& rng) {
  const ActionDistribution probs = ActionProbabilities(params, obs);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  int last = 0;
  for (int a = 0; a < game::kNumActions; ++a) {
    if (probs[a] <= 0.0) continue;
    last = a;
    cumulative += probs[a];
    if (u < cumulative) return static_cast<Action>(a);
  }
  return static_cast<Action>(last);
}

}  // namespace loi::policy
