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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "loi/common/errors.h"
#include "loi/experiment/config.h"
#include "loi/experiment/csv.h"
#include "loi/experiment/manifest.h"
#include "loi/experiment/pipeline.h"
#include "loi/experiment/report.h"
#include "loi/experiment/serialization.h"
#include "loi/stats/hypothesis.h"

namespace loi::experiment {
namespace {

namespace fs = std::filesystem;

fs::path ScratchDir(const std::string& tag) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() /
                 ("loi_experiment_" + std::string(info->name()) + "_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kMinimal = R"({
  "scale": 0.01,
  "seed": 3,
  "environments": [{"name": "chicken"}],
  "scenarios": [{"name": "small", "map": "small.map"},
                {"name": "large", "map": "large.map"}]
})";

TEST(ConfigTest, MinimalConfigUsesDefaults) {
  const auto config = ParseConfig(kMinimal, LOI_MAPS_DIR);
  EXPECT_EQ(config.seed, 3u);
  EXPECT_EQ(config.LoIPolicySteps(), 50'000);
  EXPECT_EQ(config.EvalPolicySteps(), 100'000);
  EXPECT_EQ(config.BaseUnit(), 100'000);
  EXPECT_EQ(config.loi.b, 5);
  EXPECT_EQ(config.loi.n, 9);
  EXPECT_TRUE(config.scenarios[0].map.is_absolute());
  EXPECT_EQ(config.ScenarioIndex("large"), 1);
  EXPECT_THROW(config.ScenarioIndex("medium"), ConfigError);
  EXPECT_THROW(config.EnvironmentIndex("stag"), ConfigError);
  EXPECT_NO_THROW(config.Validate());
}

TEST(ConfigTest, ScaledStepsRoundAndFloorAtOne) {
  ExperimentConfig config;
  config.scale = 0.001;
  EXPECT_EQ(config.Scaled(5e6), 5'000);
  EXPECT_EQ(config.Scaled(1499), 1);
  EXPECT_EQ(config.Scaled(1500), 2);
  EXPECT_EQ(config.Scaled(10), 1);
}

TEST(ConfigTest, RejectsBadInput) {
  EXPECT_THROW(ParseConfig("{", LOI_MAPS_DIR), ConfigError);
  EXPECT_THROW(ParseConfig(R"({"scale": 0.01, "bogus": 1})", LOI_MAPS_DIR), ConfigError);
  EXPECT_THROW(ParseConfig(R"({
    "environments": [{"name": "chicken"}],
    "scenarios": [{"name": "small", "map": "small.map"}],
    "allocation": {"enabled": false},
    "evaluation": {"methods": ["PP3"]}
  })", LOI_MAPS_DIR),
               ConfigError);
  auto missing_map = ParseConfig(kMinimal, LOI_MAPS_DIR);
  missing_map.scenarios[0].map = "/nonexistent/x.map";
  EXPECT_THROW(missing_map.Validate(), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), ConfigError);
}

TEST(ConfigTest, ShippedConfigsLoad) {
  for (const char* name : {"smoke.json", "desk.json"}) {
    const auto config = LoadConfig(fs::path(LOI_CONFIGS_DIR) / name);
    EXPECT_NO_THROW(config.Validate()) << name;
  }
  const auto desk = LoadConfig(fs::path(LOI_CONFIGS_DIR) / "desk.json");
  EXPECT_EQ(desk.environments.size(), 4u);
  EXPECT_EQ(desk.scenarios.size(), 4u);
  EXPECT_EQ(desk.EvalPolicySteps(), 100'000);
}

TEST(ConfigTest, EchoDependsOnMapContentNotLocation) {
  const auto config = ParseConfig(kMinimal, LOI_MAPS_DIR);
  const auto dir = ScratchDir("echo");
  fs::copy_file(fs::path(LOI_MAPS_DIR) / "small.map", dir / "small.map");
  fs::copy_file(fs::path(LOI_MAPS_DIR) / "large.map", dir / "large.map");
  const auto moved = ParseConfig(kMinimal, dir);
  EXPECT_EQ(ConfigEcho(moved), ConfigEcho(config));
  auto reseeded = config;
  reseeded.seed = 4;
  EXPECT_NE(ConfigEcho(reseeded), ConfigEcho(config));
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.090922954205892e-05, 1e300}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(1.0), "1");
}

TEST(CsvTest, ParseAndQuote) {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "1"}, {"say \"hi\"", ""}};
  const auto back = ParseCsv(t.ToString());
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.Column("b"), 1u);
  EXPECT_THROW(back.Column("c"), ValidationError);
  EXPECT_THROW(ParseCsv("a,b\n1\n"), ParseError);
  EXPECT_THROW(ParseCsv(""), ParseError);
}

TEST(CsvTest, RawRewardsRoundTrip) {
  const std::vector<RawRewardRow> rows{{"chicken", "small", "SP", 0, 1, 2, 3.5},
                                       {"chicken", "large", "PP5", 4, 3, 0, -1.25}};
  const auto back = ParseRawRewards(ParseCsv(RawRewardTable(rows).ToString()));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].environment, rows[i].environment);
    EXPECT_EQ(back[i].method, rows[i].method);
    EXPECT_EQ(back[i].candidate_id, rows[i].candidate_id);
    EXPECT_EQ(back[i].bob_id, rows[i].bob_id);
    EXPECT_EQ(back[i].game, rows[i].game);
    EXPECT_EQ(back[i].reward, rows[i].reward);
  }
}

TEST(ManifestTest, RecordVerifyAndTamper) {
  const auto dir = ScratchDir("m");
  WriteTextFile(dir / "a" / "x.txt", "hello");
  WriteTextFile(dir / "b" / "1.txt", "one");
  RunManifest m;
  m.Record(dir, "first", "a/x.txt");
  m.Record(dir, "second", "b");
  EXPECT_TRUE(m.HasStage("first"));
  EXPECT_FALSE(m.HasStage("third"));
  EXPECT_EQ(m.Find("a/x.txt").sha256,
            "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824");
  EXPECT_THROW(m.Find("nope"), ValidationError);
  EXPECT_NO_THROW(VerifyManifest(m, dir));

  const auto back = RunManifest::FromJson(m.ToJson());
  EXPECT_EQ(back.ToJson(), m.ToJson());

  WriteTextFile(dir / "b" / "2.txt", "two");
  EXPECT_THROW(VerifyManifest(m, dir), IntegrityError);
  m.Record(dir, "second", "b");
  EXPECT_EQ(m.Stage("second").size(), 1u);
  EXPECT_NO_THROW(VerifyManifest(m, dir));
  fs::remove(dir / "a" / "x.txt");
  EXPECT_THROW(VerifyManifest(m, dir), ValidationError);
  EXPECT_THROW(RunManifest::FromJson("[1,"), ValidationError);
}

TEST(PipelineTest, PopulationSpecs) {
  EXPECT_EQ(ParsePopulationSpec("sp"), 1);
  EXPECT_EQ(ParsePopulationSpec("PP3"), 3);
  EXPECT_EQ(ParsePopulationSpec("pp5"), 5);
  EXPECT_EQ(ParsePopulationSpec("pp:7"), 7);
  EXPECT_THROW(ParsePopulationSpec("pp:0"), ConfigError);
  EXPECT_THROW(ParsePopulationSpec("pp:x"), ConfigError);
  EXPECT_THROW(ParsePopulationSpec("mixed"), ConfigError);
}

TEST(PipelineTest, AnovaGroupsPerGameRewardsByMethod) {
  std::vector<RawRewardRow> rows;
  const std::vector<std::vector<double>> groups{{1, 2, 3, 4}, {2, 3, 4, 5}, {8, 9, 10, 11}};
  const char* methods[] = {"SP", "PP3", "PP5"};
  for (int m = 0; m < 3; ++m) {
    for (int g = 0; g < 4; ++g) rows.push_back({"chicken", "small", methods[m], 0, 0, g, groups[m][g]});
  }
  for (int m = 0; m < 3; ++m) {
    for (int g = 0; g < 2; ++g) rows.push_back({"chicken", "large", methods[m], 0, 0, g, 1.0});
  }
  const auto table = AnovaByScenario(rows);
  ASSERT_EQ(table.size(), 2u);
  const auto direct = stats::OneWayAnova(groups);
  ASSERT_TRUE(table[0].result.has_value());
  EXPECT_EQ(table[0].scenario, "small");
  EXPECT_EQ(table[0].result->statistic, direct.statistic);
  EXPECT_EQ(table[0].result->p_value, direct.p_value);
  EXPECT_FALSE(table[1].result.has_value());
  EXPECT_FALSE(table[1].note.empty());
  const auto csv = AnovaTable(table);
  EXPECT_EQ(csv.rows.size(), 2u);
  EXPECT_EQ(csv.rows[1][csv.Column("F")], "");
}

TEST(PipelineTest, TTestComparesPlansPerEnvironment) {
  std::vector<RawRewardRow> rows;
  const std::vector<double> a{5, 6, 7, 8, 9};
  const std::vector<double> b{1, 2, 3, 4, 5};
  for (int g = 0; g < 5; ++g) {
    rows.push_back({"chicken", "small", "heuristic", 0, 0, g, a[g]});
    rows.push_back({"chicken", "small", "uniform", 0, 0, g, b[g]});
  }
  const auto table = TTestByEnvironment(rows, "heuristic", "uniform");
  ASSERT_EQ(table.size(), 1u);
  ASSERT_TRUE(table[0].result.has_value());
  const auto direct = stats::TTestOneTailed(a, b);
  EXPECT_EQ(table[0].result->statistic, direct.statistic);
  EXPECT_EQ(table[0].result->p_value, direct.p_value);
  EXPECT_EQ(TTestTable(table).rows.size(), 1u);
}

TEST(ReportTest, ConfidenceHalfWidth) {
  EXPECT_EQ(ConfidenceHalfWidth95({}), 0.0);
  EXPECT_EQ(ConfidenceHalfWidth95({4.0}), 0.0);
  // Sample sd of {1,2,3,4} is sqrt(5/3).
  EXPECT_NEAR(ConfidenceHalfWidth95({1, 2, 3, 4}), 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
}

ExperimentConfig SmokeConfig(const fs::path& out) {
  auto config = LoadConfig(fs::path(LOI_CONFIGS_DIR) / "smoke.json");
  config.output_dir = out;
  return config;
}

TEST(RunAllTest, SmokeRunIsDeterministicAndComplete) {
  const auto dir = ScratchDir("run");
  const auto first = RunAll(SmokeConfig(dir / "a"), 1);
  const auto second = RunAll(SmokeConfig(dir / "b"), 2);
  const auto ma = ReadTextFile(dir / "a" / "manifest.json");
  const auto mb = ReadTextFile(dir / "b" / "manifest.json");
  EXPECT_EQ(ma, mb);
  EXPECT_EQ(first.cells.size(), 4u);
  EXPECT_EQ(first.plans.size(), 2u);
  for (const char* stage : {"pools", "loi", "evaluation", "allocation", "comparison",
                            "stats", "variance"}) {
    EXPECT_TRUE(first.manifest.HasStage(stage)) << stage;
  }
  EXPECT_NO_THROW(VerifyManifest(ReadManifest(dir / "a" / "manifest.json"), dir / "a"));
  for (std::size_t i = 0; i < first.cells.size(); ++i) {
    EXPECT_EQ(first.cells[i].loi.mean, second.cells[i].loi.mean);
    EXPECT_GE(first.cells[i].loi.mean, 0.0);
  }
  for (const auto& p : first.plans) {
    EXPECT_EQ(p.heuristic.total_steps, p.uniform.total_steps);
  }
  ASSERT_EQ(first.variance.size(), 1u);
  EXPECT_EQ(first.variance[0].points.size(), 2u);

  const auto report = WriteReport(dir / "a" / "manifest.json", dir / "report");
  EXPECT_EQ(report.size(), 6u);
  std::vector<std::string> texts;
  for (const auto& p : report) {
    ASSERT_TRUE(fs::exists(p)) << p;
    texts.push_back(ReadTextFile(p));
  }
  const auto again = WriteReport(dir / "a" / "manifest.json", dir / "report");
  ASSERT_EQ(again.size(), report.size());
  for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(ReadTextFile(again[i]), texts[i]);
  const auto loi_table = ReadCsv(dir / "report" / "loi_table.csv");
  EXPECT_EQ(loi_table.rows.size(), 4u);
}

TEST(ReportTest, MissingStageIsNamed) {
  const auto dir = ScratchDir("r");
  WriteTextFile(dir / "manifest.json", RunManifest{}.ToJson());
  try {
    WriteReport(dir / "manifest.json", dir / "out");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("evaluation"), std::string::npos) << e.what();
  }
  EXPECT_THROW(WriteReport(dir / "absent.json", dir / "out"), ConfigError);
}

}  // namespace
}  // namespace loi::experiment
