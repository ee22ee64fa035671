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

#ifndef LOI_GAME_SCENARIO_H_
#define LOI_GAME_SCENARIO_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "loi/game/payoff.h"

namespace loi::game {

struct Position {
  int row = 0;
  int col = 0;

  auto operator<=>(const Position&) const = default;
};

enum class CellKind : std::uint8_t {
  kFloor,
  kWall,
  kSpawn,
  kFixedResource,
  kRandomResource,
};

struct MapCell {
  CellKind kind = CellKind::kFloor;
  // Resource type for kFixedResource, index into random_type_sets for
  // kRandomResource, -1 otherwise.
  int value = -1;

  bool operator==(const MapCell&) const = default;
};

// A validated map layout.
//
// Text format, one character per cell:
//   '#' wall, '.' floor, '*' spawn spot,
//   '0'..'9' fixed resource of that type,
//   'a'..'j' random resource; its type set is declared in a header line
//            such as "random a = {0,1}".
// Header lines ("key = value") precede the grid. Recognised keys: name,
// observation_radius, episode_length, respawn_delay, random <letter>.
// The first grid line fixes the width; blank lines are ignored.
struct ScenarioMap {
  std::string name;
  int width = 0;
  int height = 0;
  std::vector<MapCell> cells;  // row-major
  std::vector<std::vector<int>> random_type_sets;
  std::vector<Position> spawn_points;
  int observation_radius = 2;
  int episode_length = 2000;
  int respawn_delay = 5;

  bool InBounds(Position p) const {
    return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
  }
  int Index(Position p) const { return p.row * width + p.col; }
  const MapCell& at(Position p) const { return cells[Index(p)]; }
  // Out-of-bounds cells count as walls.
  bool IsWall(Position p) const {
    return !InBounds(p) || at(p).kind == CellKind::kWall;
  }
  int ResourceCellCount() const;
};

ScenarioMap LoadScenario(std::string_view map_text, const PayoffMatrix& payoff);
ScenarioMap LoadScenarioFile(const std::filesystem::path& path,
                             const PayoffMatrix& payoff);

}  // namespace loi::game

#endif  // LOI_GAME_SCENARIO_H_
