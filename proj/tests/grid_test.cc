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


#include <string>

#include "gtest/gtest.h"
#include "loi/common/errors.h"
#include "loi/common/random.h"
#include "loi/game/grid.h"
#include "loi/game/payoff.h"
#include "loi/game/scenario.h"

namespace loi::game {
namespace {

// Open 5x5 room: spawns in opposite corners, one type-0 and one type-1 cell.
constexpr const char* kRoom =
    "episode_length = 30\n"
    "*....\n"
    ".0...\n"
    ".....\n"
    "...1.\n"
    "....*\n";

Environment MakeEnv(const char* text, PayoffMatrix payoff = PayoffMatrix::Chicken(),
                    GameRules rules = {}) {
  ScenarioMap map = LoadScenario(text, payoff);
  return Environment(std::move(map), std::move(payoff), rules);
}

void Place(GridState& s, int agent, Position p, Direction facing) {
  s.agents[agent].position = p;
  s.agents[agent].facing = facing;
}

constexpr std::array<Action, 2> kIdle{Action::kNoop, Action::kNoop};

TEST(ResetTest, SameSeedGivesIdenticalState) {
  const auto env = MakeEnv(kRoom);
  EXPECT_EQ(env.Reset(7), env.Reset(7));
  EXPECT_NE(env.Reset(7), env.Reset(8));
}

TEST(ResetTest, FreshInventoriesAreZero) {
  const auto env = MakeEnv(kRoom);
  const auto s = env.Reset(7);
  for (const auto& agent : s.agents) {
    EXPECT_EQ(agent.inventory.counts(), (std::vector<std::int64_t>{0, 0}));
    EXPECT_TRUE(agent.active());
  }
  EXPECT_EQ(s.tick, 0);
}

TEST(ResetTest, TwoSpawnsAreBothOccupied) {
  const auto env = MakeEnv(kRoom);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = env.Reset(seed);
    ASSERT_NE(s.agents[0].position, s.agents[1].position);
    for (const auto& agent : s.agents) {
      const bool on_spawn = agent.position == Position{0, 0} ||
                            agent.position == Position{4, 4};
      ASSERT_TRUE(on_spawn);
    }
  }
}

TEST(ResetTest, RandomCellsDrawFromTheirTypeSet) {
  const auto env = MakeEnv("random a = {1}\nrandom b = {0,1}\n*ab*\n");
  std::array<int, 2> seen{};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = env.Reset(seed);
    EXPECT_EQ(s.resources[1], 1);
    ++seen[s.resources[2]];
  }
  EXPECT_GT(seen[0], 20);
  EXPECT_GT(seen[1], 20);
}

TEST(StepTest, MoveIntoWallIsNoOp) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {0, 0}, Direction::kNorth);
  Place(s, 1, {4, 4}, Direction::kNorth);
  const auto r = env.Step(s, {Action::kMoveNorth, Action::kNoop});
  EXPECT_EQ(s.agents[0].position, (Position{0, 0}));
  EXPECT_EQ(r.rewards[0], 0.0);
  EXPECT_EQ(s.tick, 1);
}

TEST(StepTest, MoveIntoCoPlayerIsBlocked) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 2}, Direction::kNorth);
  Place(s, 1, {2, 3}, Direction::kNorth);
  env.Step(s, {Action::kMoveEast, Action::kNoop});
  EXPECT_EQ(s.agents[0].position, (Position{2, 2}));
  EXPECT_EQ(s.agents[0].facing, Direction::kEast);
}

TEST(StepTest, ContestedCellGoesToPriorityAgent) {
  const auto env = MakeEnv(kRoom);
  for (int tick = 0; tick < 2; ++tick) {
    auto s = env.Reset(1);
    s.tick = tick;
    Place(s, 0, {2, 1}, Direction::kNorth);
    Place(s, 1, {2, 3}, Direction::kNorth);
    env.Step(s, {Action::kMoveEast, Action::kMoveWest});
    const int winner = tick % 2;
    EXPECT_EQ(s.agents[winner].position, (Position{2, 2}));
    EXPECT_EQ(s.agents[1 - winner].position, (Position{2, 1 + 2 * (1 - winner)}));
  }
}

TEST(StepTest, TurnsRotateFacing) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 2}, Direction::kNorth);
  env.Step(s, {Action::kTurnRight, Action::kNoop});
  EXPECT_EQ(s.agents[0].facing, Direction::kEast);
  env.Step(s, {Action::kTurnLeft, Action::kNoop});
  env.Step(s, {Action::kTurnLeft, Action::kNoop});
  EXPECT_EQ(s.agents[0].facing, Direction::kWest);
}

TEST(StepTest, CollectionFillsInventoryAndRegenerates) {
  GameRules rules;
  rules.regen_delay = 3;
  const auto env = MakeEnv(kRoom, PayoffMatrix::Chicken(), rules);
  auto s = env.Reset(1);
  Place(s, 0, {0, 1}, Direction::kNorth);
  Place(s, 1, {4, 4}, Direction::kNorth);
  const int cell = env.scenario().Index({1, 1});
  ASSERT_EQ(s.resources[cell], 0);
  const auto r = env.Step(s, {Action::kMoveSouth, Action::kNoop});
  EXPECT_EQ(s.agents[0].inventory.counts(), (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(s.resources[cell], -1);
  ASSERT_EQ(r.events.collections.size(), 1u);
  EXPECT_EQ(r.events.collections[0].resource_type, 0);
  EXPECT_EQ(r.rewards[0], 0.0);

  // Occupied cells wait; the resource returns once the agent leaves.
  env.Step(s, kIdle);
  env.Step(s, kIdle);
  env.Step(s, kIdle);
  EXPECT_EQ(s.resources[cell], -1);
  env.Step(s, {Action::kMoveEast, Action::kNoop});
  EXPECT_EQ(s.resources[cell], 0);
}

TEST(StepTest, BeamHitResolvesInteraction) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 0}, Direction::kEast);
  Place(s, 1, {2, 3}, Direction::kWest);
  s.agents[0].inventory = Inventory({1, 0});
  s.agents[1].inventory = Inventory({0, 1});
  const auto r = env.Step(s, {Action::kFire, Action::kNoop});
  ASSERT_EQ(r.events.interactions.size(), 1u);
  const auto expected = *ResolveInteraction(Inventory({1, 0}), Inventory({0, 1}),
                                            env.payoff());
  EXPECT_EQ(r.rewards[0], expected.row);
  EXPECT_EQ(r.rewards[1], expected.col);
  EXPECT_EQ(r.rewards[0], 2.0);
  EXPECT_EQ(r.rewards[1], 5.0);
  EXPECT_EQ(s.agents[0].respawn_countdown, env.scenario().respawn_delay);
  EXPECT_EQ(s.agents[1].respawn_countdown, env.scenario().respawn_delay);
  EXPECT_EQ(s.agents[0].beam_cooldown, env.rules().beam_cooldown - 1);
}

TEST(StepTest, ZappedAgentIsColumnPlayer) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 0}, Direction::kNorth);
  Place(s, 1, {2, 2}, Direction::kWest);
  s.agents[0].inventory = Inventory({1, 0});
  s.agents[1].inventory = Inventory({0, 1});
  const auto r = env.Step(s, {Action::kNoop, Action::kFire});
  ASSERT_EQ(r.events.interactions.size(), 1u);
  EXPECT_EQ(r.events.interactions[0].row_agent, 1);
  // Agent 1 plays strategy 1 against strategy 0: row payoff 5, column 2.
  EXPECT_EQ(r.rewards[1], 5.0);
  EXPECT_EQ(r.rewards[0], 2.0);
}

TEST(StepTest, MutualZapIsOneInteractionWithAgentZeroAsRow) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 0}, Direction::kEast);
  Place(s, 1, {2, 2}, Direction::kWest);
  s.agents[0].inventory = Inventory({0, 1});
  s.agents[1].inventory = Inventory({1, 0});
  const auto r = env.Step(s, {Action::kFire, Action::kFire});
  ASSERT_EQ(r.events.interactions.size(), 1u);
  EXPECT_EQ(r.events.interactions[0].row_agent, 0);
  EXPECT_EQ(r.rewards[0], 5.0);
  EXPECT_EQ(r.rewards[1], 2.0);
}

TEST(StepTest, BeamRangeAndWallsLimitHits) {
  const auto env = MakeEnv("*.#..*\n......\n");
  auto s = env.Reset(1);
  s.agents[0].inventory = Inventory({1, 0});
  s.agents[1].inventory = Inventory({1, 0});
  // Wall between the agents.
  Place(s, 0, {0, 1}, Direction::kEast);
  Place(s, 1, {0, 3}, Direction::kWest);
  auto r = env.Step(s, {Action::kFire, Action::kNoop});
  EXPECT_TRUE(r.events.interactions.empty());
  // Four cells away is out of range 3.
  s = env.Reset(1);
  s.agents[0].inventory = Inventory({1, 0});
  s.agents[1].inventory = Inventory({1, 0});
  Place(s, 0, {1, 0}, Direction::kEast);
  Place(s, 1, {1, 4}, Direction::kWest);
  r = env.Step(s, {Action::kFire, Action::kNoop});
  EXPECT_TRUE(r.events.interactions.empty());
  Place(s, 1, {1, 3}, Direction::kWest);
  // Cooldown still running from the previous shot.
  r = env.Step(s, {Action::kFire, Action::kNoop});
  EXPECT_TRUE(r.events.interactions.empty());
  r = env.Step(s, {Action::kNoop, Action::kFire});
  EXPECT_EQ(r.events.interactions.size(), 1u);
}

TEST(StepTest, EmptyInventoryHitIsInert) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 0}, Direction::kEast);
  Place(s, 1, {2, 1}, Direction::kWest);
  s.agents[0].inventory = Inventory({2, 0});
  const auto r = env.Step(s, {Action::kFire, Action::kNoop});
  EXPECT_TRUE(r.events.interactions.empty());
  EXPECT_EQ(r.events.inert_hits, 1);
  EXPECT_TRUE(s.agents[0].active());
  EXPECT_TRUE(s.agents[1].active());
}

TEST(StepTest, RemovedAgentsRespawnWithEmptyInventory) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {2, 0}, Direction::kEast);
  Place(s, 1, {2, 1}, Direction::kWest);
  s.agents[0].inventory = Inventory({1, 0});
  s.agents[1].inventory = Inventory({1, 0});
  env.Step(s, {Action::kFire, Action::kNoop});
  const int delay = env.scenario().respawn_delay;
  for (int i = 0; i < delay - 1; ++i) {
    env.Step(s, {Action::kMoveEast, Action::kFire});
    ASSERT_FALSE(s.agents[0].active());
    ASSERT_EQ(s.agents[0].position, (Position{2, 0}));
  }
  const auto r = env.Step(s, kIdle);
  EXPECT_EQ(r.events.respawned_agents.size(), 2u);
  for (const auto& agent : s.agents) {
    EXPECT_TRUE(agent.active());
    EXPECT_TRUE(agent.inventory.empty());
    EXPECT_TRUE((agent.position == Position{0, 0} || agent.position == Position{4, 4}));
  }
  EXPECT_NE(s.agents[0].position, s.agents[1].position);
}

TEST(StepTest, SampledModeReturnsMatrixEntries) {
  GameRules rules;
  rules.payoff_mode = PayoffMode::kSampled;
  const auto env = MakeEnv(kRoom, PayoffMatrix::Chicken(), rules);
  auto s = env.Reset(3);
  Place(s, 0, {2, 0}, Direction::kEast);
  Place(s, 1, {2, 1}, Direction::kWest);
  s.agents[0].inventory = Inventory({1, 1});
  s.agents[1].inventory = Inventory({1, 1});
  const auto r = env.Step(s, {Action::kFire, Action::kNoop});
  ASSERT_EQ(r.events.interactions.size(), 1u);
  EXPECT_TRUE(r.rewards[0] == 3 || r.rewards[0] == 2 || r.rewards[0] == 5 ||
              r.rewards[0] == 0);
}

TEST(StepTest, EpisodeAcceptsExactlyEpisodeLengthSteps) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(5);
  for (int i = 0; i < env.episode_length(); ++i) {
    ASSERT_FALSE(env.IsTerminal(s));
    env.Step(s, kIdle);
  }
  EXPECT_TRUE(env.IsTerminal(s));
  EXPECT_THROW(env.Step(s, kIdle), TerminalStateError);
  EXPECT_EQ(env.steps_simulated(), static_cast<std::uint64_t>(env.episode_length()));
}

TEST(StepTest, RandomTrajectoriesAreReproducibleAndConserveInventory) {
  const auto env = MakeEnv(
      "episode_length = 400\nrandom a = {0,1}\n*.0a1.\n.1..0.\na.00.a\n"
      ".1..1a\n0.a1..\n.1.0.*\n");
  auto run = [&](std::uint64_t seed) {
    Rng actions(seed + 1000);
    auto s = env.Reset(seed);
    std::vector<StepResult> results;
    std::array<std::vector<std::int64_t>, 2> since_respawn{
        std::vector<std::int64_t>(2, 0), std::vector<std::int64_t>(2, 0)};
    while (!env.IsTerminal(s)) {
      std::array<Action, 2> a{static_cast<Action>(actions.UniformInt(kNumActions)),
                              static_cast<Action>(actions.UniformInt(kNumActions))};
      auto r = env.Step(s, a);
      for (const auto& c : r.events.collections) ++since_respawn[c.agent][c.resource_type];
      for (int agent : r.events.respawned_agents) {
        since_respawn[agent].assign(2, 0);
      }
      for (int agent = 0; agent < 2; ++agent) {
        EXPECT_EQ(s.agents[agent].inventory.counts(), since_respawn[agent]);
      }
      results.push_back(std::move(r));
    }
    return std::make_pair(s, results);
  };
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto [s1, r1] = run(seed);
    const auto [s2, r2] = run(seed);
    EXPECT_EQ(s1, s2);
    ASSERT_EQ(r1.size(), r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      EXPECT_EQ(r1[i].rewards, r2[i].rewards);
      EXPECT_EQ(r1[i].events.collections.size(), r2[i].events.collections.size());
      EXPECT_EQ(r1[i].events.interactions.size(), r2[i].events.interactions.size());
    }
  }
}

TEST(ObserveTest, CornerIsPaddedWithWalls) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  Place(s, 0, {0, 0}, Direction::kNorth);
  Place(s, 1, {4, 4}, Direction::kNorth);
  const auto obs = env.Observe(s, 0);
  ASSERT_EQ(obs.side(), 5);
  ASSERT_EQ(obs.window.size(), 25u);
  EXPECT_EQ(obs.at(0, 0), static_cast<int>(CellCode::kSelf));
  for (int d = -2; d <= 2; ++d) {
    EXPECT_EQ(obs.at(-1, d), static_cast<int>(CellCode::kWall));
    EXPECT_EQ(obs.at(d, -2), static_cast<int>(CellCode::kWall));
  }
  EXPECT_EQ(obs.at(1, 1), static_cast<int>(CellCode::kResource) + 0);
  EXPECT_EQ(obs.at(0, 1), static_cast<int>(CellCode::kFloor));
}

TEST(ObserveTest, CoPlayerThreeCellsAwayIsVisible) {
  const auto env = MakeEnv(
      "*.....\n......\n......\n......\n......\n.....*\n");
  auto s = env.Reset(1);
  Place(s, 0, {2, 2}, Direction::kNorth);
  Place(s, 1, {4, 3}, Direction::kNorth);
  s.agents[0].inventory = Inventory({2, 1});
  const auto obs = env.Observe(s, 0);
  EXPECT_EQ(obs.at(2, 1), static_cast<int>(CellCode::kCoPlayer));
  EXPECT_EQ(obs.own_inventory.counts(), (std::vector<std::int64_t>{2, 1}));
  // Outside the window when farther than the radius along an axis.
  Place(s, 1, {5, 2}, Direction::kNorth);
  const auto far = env.Observe(s, 0);
  for (auto code : far.window) EXPECT_NE(code, static_cast<int>(CellCode::kCoPlayer));
}

TEST(ObserveTest, RespawningAgentSeesWalls) {
  const auto env = MakeEnv(kRoom);
  auto s = env.Reset(1);
  s.agents[0].respawn_countdown = 2;
  s.agents[0].inventory = Inventory({1, 1});
  const auto obs = env.Observe(s, 0);
  EXPECT_TRUE(obs.respawning);
  EXPECT_TRUE(obs.own_inventory.empty());
  for (auto code : obs.window) EXPECT_EQ(code, static_cast<int>(CellCode::kWall));
}

TEST(EnvironmentTest, RejectsResourceTypesBeyondK) {
  const PayoffMatrix three("rps", {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  auto map = LoadScenario("*2*\n", three);
  EXPECT_THROW(Environment(map, PayoffMatrix::Chicken()), ValidationError);
  EXPECT_NO_THROW(Environment(map, three));
}

TEST(EnvironmentTest, RejectsBadRules) {
  GameRules rules;
  rules.beam_range = 0;
  EXPECT_THROW(MakeEnv(kRoom, PayoffMatrix::Chicken(), rules), ConfigError);
  EXPECT_THROW(ParsePayoffMode("onehot"), ConfigError);
  EXPECT_EQ(ParsePayoffMode("sampled"), PayoffMode::kSampled);
}

}  // namespace
}  // namespace loi::game
