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

#include "loi/game/grid.h"

#include <string>
#include <utility>

#include "loi/common/errors.h"

namespace loi::game {

Position Offset(Direction d) {
  switch (d) {
    case Direction::kNorth: return {-1, 0};
    case Direction::kEast: return {0, 1};
    case Direction::kSouth: return {1, 0};
    case Direction::kWest: return {0, -1};
  }
  return {0, 0};
}

Direction TurnLeft(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}

Direction TurnRight(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

std::optional<Direction> MoveDirection(Action a) {
  switch (a) {
    case Action::kMoveNorth: return Direction::kNorth;
    case Action::kMoveSouth: return Direction::kSouth;
    case Action::kMoveEast: return Direction::kEast;
    case Action::kMoveWest: return Direction::kWest;
    default: return std::nullopt;
  }
}

std::string_view PayoffModeName(PayoffMode mode) {
  return mode == PayoffMode::kMixed ? "mixed" : "sampled";
}

PayoffMode ParsePayoffMode(std::string_view name) {
  if (name == "mixed") return PayoffMode::kMixed;
  if (name == "sampled") return PayoffMode::kSampled;
  throw ConfigError("payoff_mode must be 'mixed' or 'sampled', got '" +
                    std::string(name) + "'");
}

namespace {

Position operator+(Position a, Position b) {
  return {a.row + b.row, a.col + b.col};
}

}  // namespace

Environment::Environment(ScenarioMap scenario, PayoffMatrix payoff,
                         GameRules rules)
    : scenario_(std::move(scenario)),
      payoff_(std::move(payoff)),
      rules_(rules) {
  if (rules_.beam_range < 1 || rules_.beam_cooldown < 0 ||
      rules_.regen_delay < 1) {
    throw ConfigError(
        "beam_range and regen_delay must be >= 1, beam_cooldown >= 0");
  }
  for (int i = 0; i < static_cast<int>(scenario_.cells.size()); ++i) {
    const MapCell& cell = scenario_.cells[i];
    if (cell.kind == CellKind::kFixedResource) {
      if (cell.value >= payoff_.k()) {
        throw ValidationError("scenario '" + scenario_.name +
                              "' uses resource types beyond k of '" +
                              payoff_.name() + "'");
      }
      resource_cells_.push_back(i);
    } else if (cell.kind == CellKind::kRandomResource) {
      for (int t : scenario_.random_type_sets[cell.value]) {
        if (t >= payoff_.k()) {
          throw ValidationError("scenario '" + scenario_.name +
                                "' uses resource types beyond k of '" +
                                payoff_.name() + "'");
        }
      }
      resource_cells_.push_back(i);
    }
  }
}

Environment::Environment(const Environment& other)
    : scenario_(other.scenario_),
      payoff_(other.payoff_),
      rules_(other.rules_),
      resource_cells_(other.resource_cells_),
      steps_simulated_(other.steps_simulated()) {}

Environment& Environment::operator=(const Environment& other) {
  if (this != &other) {
    scenario_ = other.scenario_;
    payoff_ = other.payoff_;
    rules_ = other.rules_;
    resource_cells_ = other.resource_cells_;
    steps_simulated_.store(other.steps_simulated(), std::memory_order_relaxed);
  }
  return *this;
}

GridState Environment::Reset(std::uint64_t seed) const {
  GridState state;
  state.rng = Rng(seed);
  const std::size_t n_cells = scenario_.cells.size();
  state.resources.assign(n_cells, -1);
  state.base_types.assign(n_cells, -1);
  state.regen_countdown.assign(n_cells, 0);

  const auto& spawns = scenario_.spawn_points;
  const std::uint64_t first = state.rng.UniformInt(spawns.size());
  std::uint64_t second = state.rng.UniformInt(spawns.size() - 1);
  if (second >= first) ++second;
  const std::array<std::uint64_t, kNumAgents> spots{first, second};
  for (int a = 0; a < kNumAgents; ++a) {
    AgentState& agent = state.agents[a];
    agent.position = spawns[spots[a]];
    agent.facing = static_cast<Direction>(state.rng.UniformInt(4));
    agent.inventory = Inventory(payoff_.k());
  }

  for (int idx : resource_cells_) {
    const MapCell& cell = scenario_.cells[idx];
    int type = cell.value;
    if (cell.kind == CellKind::kRandomResource) {
      const auto& set = scenario_.random_type_sets[cell.value];
      type = set[state.rng.UniformInt(set.size())];
    }
    state.base_types[idx] = static_cast<std::int8_t>(type);
    state.resources[idx] = static_cast<std::int8_t>(type);
  }
  return state;
}

bool Environment::BeamHits(const GridState& state, int shooter) const {
  const AgentState& self = state.agents[shooter];
  const AgentState& other = state.agents[1 - shooter];
  const Position step = Offset(self.facing);
  Position p = self.position;
  for (int s = 0; s < rules_.beam_range; ++s) {
    p = p + step;
    if (scenario_.IsWall(p)) return false;
    if (other.active() && other.position == p) return true;
  }
  return false;
}

void Environment::Respawn(GridState& state, int agent) const {
  const AgentState& other = state.agents[1 - agent];
  std::vector<Position> free;
  free.reserve(scenario_.spawn_points.size());
  for (Position p : scenario_.spawn_points) {
    if (!(other.active() && other.position == p)) free.push_back(p);
  }
  AgentState& self = state.agents[agent];
  self.position = free[state.rng.UniformInt(free.size())];
  self.facing = static_cast<Direction>(state.rng.UniformInt(4));
  self.inventory.Clear();
  self.respawn_countdown.reset();
}

StepResult Environment::Step(GridState& state,
                             const std::array<Action, kNumAgents>& actions) const {
  if (IsTerminal(state)) {
    throw TerminalStateError("episode already ended at tick " +
                             std::to_string(state.tick));
  }
  StepResult result;
  StepEvents& events = result.events;

  for (int a = 0; a < kNumAgents; ++a) {
    AgentState& agent = state.agents[a];
    if (!agent.active()) continue;
    if (actions[a] == Action::kTurnLeft) agent.facing = TurnLeft(agent.facing);
    if (actions[a] == Action::kTurnRight) agent.facing = TurnRight(agent.facing);
  }

  // Moves resolve sequentially; the priority agent alternates each tick, so
  // when both target the same cell the lower-priority move is cancelled.
  const int priority = static_cast<int>(state.tick % kNumAgents);
  for (int order = 0; order < kNumAgents; ++order) {
    const int a = (priority + order) % kNumAgents;
    AgentState& agent = state.agents[a];
    if (!agent.active()) continue;
    const auto dir = MoveDirection(actions[a]);
    if (!dir) continue;
    agent.facing = *dir;
    const Position target = agent.position + Offset(*dir);
    if (scenario_.IsWall(target)) continue;
    const AgentState& other = state.agents[1 - a];
    if (other.active() && other.position == target) continue;
    agent.position = target;
    const int idx = scenario_.Index(target);
    if (state.resources[idx] >= 0) {
      const int type = state.resources[idx];
      agent.inventory.Add(type);
      state.resources[idx] = -1;
      state.regen_countdown[idx] = static_cast<std::int16_t>(rules_.regen_delay);
      events.collections.push_back({a, type, target});
    }
  }

  std::array<bool, kNumAgents> hit{false, false};
  for (int a = 0; a < kNumAgents; ++a) {
    AgentState& agent = state.agents[a];
    if (!agent.active() || actions[a] != Action::kFire ||
        agent.beam_cooldown > 0) {
      continue;
    }
    agent.beam_cooldown = rules_.beam_cooldown;
    hit[a] = BeamHits(state, a);
  }

  std::array<bool, kNumAgents> removed{false, false};
  if (hit[0] || hit[1]) {
    // A mutual zap is one interaction with agent 0 as the row player;
    // otherwise the shooter is the row player.
    const int row = hit[0] ? 0 : 1;
    const int col = 1 - row;
    AgentState& row_agent = state.agents[row];
    AgentState& col_agent = state.agents[col];
    std::optional<InteractionPayoff> payoff;
    if (rules_.payoff_mode == PayoffMode::kMixed) {
      payoff = ResolveInteraction(row_agent.inventory, col_agent.inventory,
                                  payoff_);
    } else {
      auto nu_row = row_agent.inventory.MixedWeights();
      auto nu_col = col_agent.inventory.MixedWeights();
      if (nu_row && nu_col) {
        payoff = SampledPayoff(*nu_row, *nu_col, payoff_, state.rng);
      }
    }
    if (!payoff) {
      ++events.inert_hits;
    } else {
      result.rewards[row] += payoff->row;
      result.rewards[col] += payoff->col;
      row_agent.episode_reward += payoff->row;
      col_agent.episode_reward += payoff->col;
      row_agent.respawn_countdown = scenario_.respawn_delay;
      col_agent.respawn_countdown = scenario_.respawn_delay;
      removed = {true, true};
      events.interactions.push_back({row, col, payoff->row, payoff->col});
    }
  }

  for (int idx : resource_cells_) {
    if (state.regen_countdown[idx] == 0) continue;
    if (--state.regen_countdown[idx] > 0) continue;
    bool occupied = false;
    for (const AgentState& agent : state.agents) {
      if (agent.active() && scenario_.Index(agent.position) == idx) {
        occupied = true;
      }
    }
    if (occupied) {
      state.regen_countdown[idx] = 1;  // retry next tick
    } else {
      state.resources[idx] = state.base_types[idx];
    }
  }

  for (int a = 0; a < kNumAgents; ++a) {
    AgentState& agent = state.agents[a];
    if (agent.beam_cooldown > 0) --agent.beam_cooldown;
    if (agent.respawn_countdown && !removed[a]) {
      if (--*agent.respawn_countdown <= 0) {
        Respawn(state, a);
        events.respawned_agents.push_back(a);
      }
    }
  }

  ++state.tick;
  steps_simulated_.fetch_add(1, std::memory_order_relaxed);
  return result;
}

void Environment::ObserveInto(const GridState& state, int agent,
                              Observation* obs) const {
  const AgentState& self = state.agents[agent];
  const AgentState& other = state.agents[1 - agent];
  const int r = scenario_.observation_radius;
  const int side = 2 * r + 1;
  obs->radius = r;
  obs->window.assign(side * side, static_cast<std::uint8_t>(CellCode::kWall));
  obs->tick = state.tick;
  obs->facing = self.facing;
  obs->beam_cooldown = self.beam_cooldown;
  obs->respawning = !self.active();
  if (!self.active()) {
    obs->own_inventory = Inventory(payoff_.k());
    return;
  }
  obs->own_inventory = self.inventory;
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      const Position p{self.position.row + dr, self.position.col + dc};
      CellCode code;
      if (scenario_.IsWall(p)) {
        code = CellCode::kWall;
      } else if (dr == 0 && dc == 0) {
        code = CellCode::kSelf;
      } else if (other.active() && other.position == p) {
        code = CellCode::kCoPlayer;
      } else if (const int t = state.resources[scenario_.Index(p)]; t >= 0) {
        code = static_cast<CellCode>(static_cast<int>(CellCode::kResource) + t);
      } else {
        code = CellCode::kFloor;
      }
      obs->window[(dr + r) * side + (dc + r)] = static_cast<std::uint8_t>(code);
    }
  }
}

Observation Environment::Observe(const GridState& state, int agent) const {
  Observation obs;
  ObserveInto(state, agent, &obs);
  return obs;
}

}  // namespace loi::game
