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


#ifndef LOI_EXPERIMENT_PIPELINE_H_
#define LOI_EXPERIMENT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "loi/alloc/allocator.h"
#include "loi/eval/fixed_bobs.h"
#include "loi/experiment/config.h"
#include "loi/experiment/csv.h"
#include "loi/experiment/manifest.h"
#include "loi/metric/loi.h"
#include "loi/stats/hypothesis.h"
#include "loi/train/trainer.h"

namespace loi::experiment {

// "sp", "pp3", "pp5" or "pp:<p>" to a population size.
int ParsePopulationSpec(std::string_view method);

// Writes pools as <run_dir>/pop<q>/, plus report.json and reward_curve.csv.
void WriteTrainingRun(const std::filesystem::path& run_dir,
                      const train::TrainingConfig& config,
                      const train::TrainingReport& report);
// Reads every pop<q>/ pool of a run directory in population order.
std::vector<policy::CheckpointPool> ReadTrainingRun(const std::filesystem::path& run_dir);

// Long-format rows for an evaluation report.
std::vector<RawRewardRow> EvaluationRows(const eval::EvaluationReport& report,
                                         std::string_view environment,
                                         std::string_view scenario);

struct AnovaRow {
  std::string environment;
  std::string scenario;
  std::vector<std::string> methods;
  std::optional<stats::TestResult> result;
  std::string note;  // reason when result is empty
};

struct TTestRow {
  std::string environment;
  std::string method_a;
  std::string method_b;
  std::optional<stats::TestResult> result;
  std::string note;
};

// One ANOVA per (environment, scenario) over per-game rewards grouped by
// method. Degenerate cells keep a note instead of aborting.
std::vector<AnovaRow> AnovaByScenario(const std::vector<RawRewardRow>& rows);
// One t-test per environment, pooling all scenarios: method_a > method_b.
std::vector<TTestRow> TTestByEnvironment(const std::vector<RawRewardRow>& rows,
                                         std::string_view method_a,
                                         std::string_view method_b);
CsvTable AnovaTable(const std::vector<AnovaRow>& rows);
CsvTable TTestTable(const std::vector<TTestRow>& rows);

struct CellOutcome {
  std::string environment;
  std::string scenario;
  metric::LoIEstimate loi;
  eval::EvaluationReport evaluation;
};

struct EnvironmentPlans {
  std::string environment;
  alloc::AllocationPlan heuristic;
  alloc::AllocationPlan uniform;
};

struct VarianceOutcome {
  std::string environment;
  std::string scenario;
  std::vector<metric::VariancePoint> points;
};

struct RunSummary {
  std::vector<CellOutcome> cells;
  std::vector<EnvironmentPlans> plans;
  // Per-game rewards of each plan's agents, normalized by the SP mean of
  // their scenario; method is "uniform" or "heuristic".
  std::vector<RawRewardRow> comparison;
  std::vector<AnovaRow> anova;
  std::vector<TTestRow> ttest;
  std::vector<VarianceOutcome> variance;
  RunManifest manifest;
  std::map<std::string, double> stage_seconds;
};

// train -> loi -> allocate -> evaluate -> stats -> variance study, written
// under config.output_dir with a hash-pinned manifest.json. Wall-clock
// timings go to timings.json, which the manifest does not cover.
RunSummary RunAll(const ExperimentConfig& config, int jobs = 1,
                  std::ostream* log = nullptr);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_PIPELINE_H_
