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

#ifndef LOI_GAME_GRID_H_
#define LOI_GAME_GRID_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "loi/common/random.h"
#include "loi/game/payoff.h"
#include "loi/game/scenario.h"

namespace loi::game {

inline constexpr int kNumAgents = 2;

// Moves are absolute and also turn the agent toward the move direction, even
// when the move is blocked.
enum class Action : std::uint8_t {
  kNoop,
  kMoveNorth,
  kMoveSouth,
  kMoveEast,
  kMoveWest,
  kTurnLeft,
  kTurnRight,
  kFire,
};
inline constexpr int kNumActions = 8;

enum class Direction : std::uint8_t { kNorth, kEast, kSouth, kWest };

Position Offset(Direction d);
Direction TurnLeft(Direction d);
Direction TurnRight(Direction d);
std::optional<Direction> MoveDirection(Action a);

enum class PayoffMode : std::uint8_t { kMixed, kSampled };

std::string_view PayoffModeName(PayoffMode mode);
PayoffMode ParsePayoffMode(std::string_view name);

// Game mechanics that the map file does not carry.
struct GameRules {
  int beam_range = 3;
  int beam_cooldown = 5;
  int regen_delay = 10;
  PayoffMode payoff_mode = PayoffMode::kMixed;
};

struct AgentState {
  Position position;
  Direction facing = Direction::kNorth;
  Inventory inventory;
  // Set while the agent is off the grid waiting to respawn.
  std::optional<int> respawn_countdown;
  int beam_cooldown = 0;
  double episode_reward = 0.0;

  bool active() const { return !respawn_countdown.has_value(); }
  bool operator==(const AgentState&) const = default;
};

struct GridState {
  std::int64_t tick = 0;
  std::array<AgentState, kNumAgents> agents;
  // Per cell: resource type currently present, or -1.
  std::vector<std::int8_t> resources;
  // Per cell: the type a resource cell regrows to (random cells are
  // materialised once at reset), or -1 for non-resource cells.
  std::vector<std::int8_t> base_types;
  // Per cell: steps until a depleted resource regrows; 0 when idle.
  std::vector<std::int16_t> regen_countdown;
  Rng rng{0};

  bool operator==(const GridState&) const = default;
};

struct CollectionEvent {
  int agent = 0;
  int resource_type = 0;
  Position position;
};

struct InteractionEvent {
  int row_agent = 0;
  int col_agent = 1;
  double row_reward = 0.0;
  double col_reward = 0.0;
};

struct StepEvents {
  std::vector<CollectionEvent> collections;
  std::vector<InteractionEvent> interactions;
  // Beam hits that were inert because an inventory was empty.
  int inert_hits = 0;
  std::vector<int> respawned_agents;
};

struct StepResult {
  std::array<double, kNumAgents> rewards{};
  StepEvents events;
};

enum class CellCode : std::uint8_t {
  kFloor = 0,
  kWall = 1,
  kSelf = 2,
  kCoPlayer = 3,
  kResource = 4,  // resource type t is coded kResource + t
};

struct Observation {
  int radius = 0;
  // (2r+1) x (2r+1), row-major, north up, agent at the centre.
  std::vector<std::uint8_t> window;
  Inventory own_inventory;
  std::int64_t tick = 0;
  Direction facing = Direction::kNorth;
  int beam_cooldown = 0;
  bool respawning = false;

  int side() const { return 2 * radius + 1; }
  std::uint8_t at(int dr, int dc) const {
    return window[(dr + radius) * side() + (dc + radius)];
  }
};

// Two-player *-in-the-Matrix gridworld over one scenario and payoff matrix.
// The environment itself is immutable apart from an audit counter of
// simulated steps; all episode state lives in GridState values.
class Environment {
 public:
  Environment(ScenarioMap scenario, PayoffMatrix payoff, GameRules rules = {});
  Environment(const Environment& other);
  Environment& operator=(const Environment& other);

  const ScenarioMap& scenario() const { return scenario_; }
  const PayoffMatrix& payoff() const { return payoff_; }
  const GameRules& rules() const { return rules_; }
  int episode_length() const { return scenario_.episode_length; }

  GridState Reset(std::uint64_t seed) const;

  // Advances one tick. Throws TerminalStateError once episode_length steps
  // have been taken.
  StepResult Step(GridState& state,
                  const std::array<Action, kNumAgents>& actions) const;

  bool IsTerminal(const GridState& state) const {
    return state.tick >= scenario_.episode_length;
  }

  Observation Observe(const GridState& state, int agent) const;
  void ObserveInto(const GridState& state, int agent, Observation* obs) const;

  // Successful Step calls made through this object. A copy starts from the
  // count of its source.
  std::uint64_t steps_simulated() const {
    return steps_simulated_.load(std::memory_order_relaxed);
  }

 private:
  bool BeamHits(const GridState& state, int shooter) const;
  void Respawn(GridState& state, int agent) const;

  ScenarioMap scenario_;
  PayoffMatrix payoff_;
  GameRules rules_;
  std::vector<int> resource_cells_;
  mutable std::atomic<std::uint64_t> steps_simulated_{0};
};

}  // namespace loi::game

#endif  // LOI_GAME_GRID_H_
