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


#include <filesystem>
#include <fstream>
#include <set>

#include "gtest/gtest.h"
#include "loi/common/errors.h"
#include "loi/common/random.h"
#include "loi/policy/checkpoint.h"
#include "loi/policy/policy.h"

namespace loi::policy {
namespace {

namespace fs = std::filesystem;

CheckpointPool MakePool(int n, std::uint64_t seed = 1) {
  CheckpointPool pool;
  pool.run_id = "run";
  pool.scenario_id = "small";
  pool.environment_id = "chicken";
  pool.total_steps = 200000LL * n;
  Rng rng(seed);
  for (int i = 1; i <= n; ++i) pool.Save(RandomParams(2, rng), 200000LL * i);
  return pool;
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("loi_ckpt_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(FingerprintTest, PureFunctionOfParams) {
  Rng rng(3);
  const auto p = RandomParams(2, rng);
  auto q = p;
  EXPECT_EQ(ParamsFingerprint(p), ParamsFingerprint(q));
  q.zap_propensity = std::nextafter(q.zap_propensity, 2.0);
  EXPECT_NE(ParamsFingerprint(p), ParamsFingerprint(q));
}

TEST(SaveTest, EmptyPoolSaveAtZero) {
  CheckpointPool pool;
  pool.Save(PolicyParams{{1.0, 0.0}}, 0);
  EXPECT_EQ(pool.size(), 1u);
  EXPECT_EQ(pool.latest().fingerprint, ParamsFingerprint(pool.latest().params));
}

TEST(SaveTest, CadenceIsSorted) {
  CheckpointPool pool;
  pool.Save(PolicyParams{{1.0, 0.0}}, 200000);
  pool.Save(PolicyParams{{0.0, 1.0}}, 400000);
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_LT(pool.checkpoints[0].step_index, pool.checkpoints[1].step_index);
}

TEST(SaveTest, NonMonotoneStepIsRejected) {
  CheckpointPool pool;
  pool.Save(PolicyParams{{1.0, 0.0}}, 200);
  EXPECT_THROW(pool.Save(PolicyParams{{1.0, 0.0}}, 100), OrderingError);
  EXPECT_THROW(pool.Save(PolicyParams{{1.0, 0.0}}, 200), OrderingError);
}

TEST(StageTest, LateIsFinalQuarter) {
  EXPECT_EQ(EligibleCheckpoints(MakePool(25), Stage::kLate).size(), 7u);
  EXPECT_EQ(EligibleCheckpoints(MakePool(4), Stage::kLate).size(), 1u);
  EXPECT_EQ(EligibleCheckpoints(MakePool(1), Stage::kLate).size(), 1u);
  EXPECT_EQ(EligibleCheckpoints(MakePool(25), Stage::kAll).size(), 25u);
  EXPECT_EQ(ParseStage("late"), Stage::kLate);
  EXPECT_EQ(StageName(Stage::kAll), "all");
  EXPECT_THROW(ParseStage("early"), ConfigError);
}

TEST(SampleTest, LateDrawComesFromLastSevenSaves) {
  const auto pool = MakePool(25);
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto drawn = SampleCheckpoints(pool, {4, Stage::kLate, {}}, rng);
    ASSERT_EQ(drawn.size(), 4u);
    std::set<std::int64_t> steps;
    for (const auto& c : drawn) {
      EXPECT_GE(c.step_index, pool.checkpoints[18].step_index);
      steps.insert(c.step_index);
    }
    EXPECT_EQ(steps.size(), 4u);
    EXPECT_TRUE(std::is_sorted(drawn.begin(), drawn.end(),
                               [](const Checkpoint& a, const Checkpoint& b) {
                                 return a.step_index < b.step_index;
                               }));
  }
}

TEST(SampleTest, ExhaustiveDrawReturnsWholePool) {
  const auto pool = MakePool(9);
  Rng rng(2);
  EXPECT_EQ(SampleCheckpoints(pool, {9, Stage::kAll, {}}, rng), pool.checkpoints);
}

TEST(SampleTest, OversizedDrawFails) {
  const auto pool = MakePool(9);
  Rng rng(2);
  EXPECT_THROW(SampleCheckpoints(pool, {10, Stage::kAll, {}}, rng),
               InsufficientCheckpointsError);
  EXPECT_THROW(SampleCheckpoints(pool, {4, Stage::kLate, {}}, rng),
               InsufficientCheckpointsError);
}

TEST(SampleTest, WeightsMustFormDistribution) {
  const auto pool = MakePool(4);
  Rng rng(2);
  EXPECT_THROW(SampleCheckpoints(pool, {1, Stage::kAll, {0.5, 0.5, 0.5, -0.5}}, rng),
               ValidationError);
  EXPECT_THROW(SampleCheckpoints(pool, {1, Stage::kAll, {0.25, 0.25, 0.25, 0.2}}, rng),
               ValidationError);
  EXPECT_THROW(SampleCheckpoints(pool, {1, Stage::kAll, {0.5, 0.5}}, rng),
               ValidationError);
  // Zero-weight checkpoints are never eligible.
  EXPECT_THROW(SampleCheckpoints(pool, {3, Stage::kAll, {0.5, 0.5, 0.0, 0.0}}, rng),
               InsufficientCheckpointsError);
}

TEST(SampleTest, EmpiricalFrequenciesMatchWeights) {
  const auto pool = MakePool(4);
  const std::vector<double> weights{0.1, 0.2, 0.3, 0.4};
  Rng rng(77);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto drawn = SampleCheckpoints(pool, {1, Stage::kAll, weights}, rng);
    for (int c = 0; c < 4; ++c) {
      if (drawn[0].step_index == pool.checkpoints[c].step_index) ++counts[c];
    }
  }
  for (int c = 0; c < 4; ++c) {
    const double se = std::sqrt(weights[c] * (1 - weights[c]) / n);
    EXPECT_NEAR(counts[c] / static_cast<double>(n), weights[c], 3 * se);
  }
}

TEST(PoolIoTest, RoundTripPreservesFingerprints) {
  const auto pool = MakePool(6);
  const auto dir = TempDir("roundtrip");
  WritePool(pool, dir);
  const auto loaded = ReadPool(dir);
  EXPECT_EQ(loaded, pool);
  for (const auto& c : loaded.checkpoints) {
    EXPECT_EQ(ParamsFingerprint(c.params), c.fingerprint);
  }
  fs::remove_all(dir);
}

TEST(PoolIoTest, TamperedCheckpointFailsIntegrity) {
  const auto pool = MakePool(2);
  const auto dir = TempDir("tamper");
  WritePool(pool, dir);
  const fs::path file = dir / "ckpt_0001.json";
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("\"zap_propensity\"");
  ASSERT_NE(pos, std::string::npos);
  const auto colon = text.find(':', pos);
  const auto end = text.find_first_of(",\n}", colon);
  text.replace(colon + 1, end - colon - 1, " 0.123");
  std::ofstream(file) << text;
  EXPECT_THROW(ReadPool(dir), IntegrityError);
  fs::remove_all(dir);
}

TEST(PoolIoTest, MissingPoolIsConfigError) {
  EXPECT_THROW(ReadPool(TempDir("missing")), ConfigError);
}

}  // namespace
}  // namespace loi::policy
