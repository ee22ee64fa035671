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

#include "loi/game/scenario.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "loi/common/errors.h"

namespace loi::game {
namespace {

std::string_view Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int ParseInt(std::string_view text, int row, std::string_view key) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(row, 0, "invalid integer for '" + std::string(key) + "'");
  }
  return value;
}

std::vector<int> ParseTypeSet(std::string_view text, int row) {
  text = Trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError(row, 0, "random type set must look like {0,1}");
  }
  std::vector<int> types;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = Trim(body.substr(0, comma));
    types.push_back(ParseInt(item, row, "random"));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (types.empty()) throw ParseError(row, 0, "empty random type set");
  return types;
}

}  // namespace

int ScenarioMap::ResourceCellCount() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const MapCell& c) {
    return c.kind == CellKind::kFixedResource ||
           c.kind == CellKind::kRandomResource;
  }));
}

ScenarioMap LoadScenario(std::string_view map_text, const PayoffMatrix& payoff) {
  ScenarioMap map;
  std::vector<std::optional<std::vector<int>>> declared(10);
  std::vector<std::string> grid;
  std::vector<int> grid_source_rows;

  int line_no = 0;
  std::istringstream in{std::string(map_text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const int row = line_no++;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;

    const auto eq = line.find('=');
    if (grid.empty() && eq != std::string_view::npos) {
      std::string_view key = Trim(line.substr(0, eq));
      std::string_view value = Trim(line.substr(eq + 1));
      if (key.starts_with("random")) {
        std::string_view letter = Trim(key.substr(6));
        if (letter.size() != 1 || letter[0] < 'a' || letter[0] > 'j') {
          throw ParseError(row, 0, "random cells use letters a..j");
        }
        declared[letter[0] - 'a'] = ParseTypeSet(value, row);
      } else if (key == "name") {
        map.name = std::string(value);
      } else if (key == "observation_radius") {
        map.observation_radius = ParseInt(value, row, key);
      } else if (key == "episode_length") {
        map.episode_length = ParseInt(value, row, key);
      } else if (key == "respawn_delay") {
        map.respawn_delay = ParseInt(value, row, key);
      } else {
        throw ParseError(row, 0, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }
    grid.emplace_back(line);
    grid_source_rows.push_back(row);
  }

  if (grid.empty()) throw ParseError(line_no, 0, "map has no grid rows");
  map.height = static_cast<int>(grid.size());
  map.width = static_cast<int>(grid.front().size());
  map.cells.resize(map.width * map.height);

  std::vector<int> random_slot(10, -1);
  for (int r = 0; r < map.height; ++r) {
    if (static_cast<int>(grid[r].size()) != map.width) {
      throw ParseError(r, static_cast<int>(grid[r].size()),
                       "row width differs from the first grid row");
    }
    for (int c = 0; c < map.width; ++c) {
      const char ch = grid[r][c];
      MapCell cell;
      if (ch == '#') {
        cell.kind = CellKind::kWall;
      } else if (ch == '.') {
        cell.kind = CellKind::kFloor;
      } else if (ch == '*') {
        cell.kind = CellKind::kSpawn;
        map.spawn_points.push_back({r, c});
      } else if (ch >= '0' && ch <= '9') {
        cell.kind = CellKind::kFixedResource;
        cell.value = ch - '0';
        if (cell.value >= payoff.k()) {
          throw ValidationError("resource type " + std::to_string(cell.value) +
                                " at row " + std::to_string(r) + ", column " +
                                std::to_string(c) + " exceeds k = " +
                                std::to_string(payoff.k()));
        }
      } else if (ch >= 'a' && ch <= 'j') {
        const int letter = ch - 'a';
        if (!declared[letter]) {
          throw ParseError(r, c, std::string("random cell '") + ch +
                                     "' has no type-set declaration");
        }
        if (random_slot[letter] < 0) {
          for (int t : *declared[letter]) {
            if (t < 0 || t >= payoff.k()) {
              throw ValidationError(std::string("random set '") + ch +
                                    "' contains type " + std::to_string(t) +
                                    " outside [0, k)");
            }
          }
          random_slot[letter] = static_cast<int>(map.random_type_sets.size());
          map.random_type_sets.push_back(*declared[letter]);
        }
        cell.kind = CellKind::kRandomResource;
        cell.value = random_slot[letter];
      } else {
        throw ParseError(r, c, std::string("unknown map character '") + ch + "'");
      }
      map.cells[r * map.width + c] = cell;
    }
  }

  if (map.spawn_points.size() < 2) {
    throw ValidationError("map needs at least 2 spawn spots, found " +
                          std::to_string(map.spawn_points.size()));
  }
  if (map.observation_radius < 0 || map.episode_length < 1 ||
      map.respawn_delay < 1) {
    throw ValidationError(
        "observation_radius must be >= 0, episode_length and respawn_delay >= 1");
  }
  return map;
}

ScenarioMap LoadScenarioFile(const std::filesystem::path& path,
                             const PayoffMatrix& payoff) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  ScenarioMap map = LoadScenario(buffer.str(), payoff);
  if (map.name.empty()) map.name = path.stem().string();
  return map;
}

}  // namespace loi::game
