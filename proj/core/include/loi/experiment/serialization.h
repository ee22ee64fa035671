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


#ifndef LOI_EXPERIMENT_SERIALIZATION_H_
#define LOI_EXPERIMENT_SERIALIZATION_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "loi/alloc/allocator.h"
#include "loi/eval/fixed_bobs.h"
#include "loi/experiment/csv.h"
#include "loi/metric/loi.h"
#include "loi/train/trainer.h"

namespace loi::experiment {

// All JSON produced here is pretty-printed with sorted keys, so equal values
// give byte-identical text.

std::string TrainingReportToJson(const train::TrainingConfig& config,
                                 const train::TrainingReport& report);
// step, mean_reward (blank before the first finished update).
CsvTable RewardCurveTable(const train::TrainingConfig& config,
                          const train::TrainingReport& report);

std::string LoIEstimateToJson(const metric::LoIEstimate& estimate);
metric::LoIEstimate LoIEstimateFromJson(std::string_view text);

std::string AllocationPlanToJson(const alloc::AllocationPlan& plan,
                                 std::string_view environment);
alloc::AllocationPlan AllocationPlanFromJson(std::string_view text);

// Summary only; per-game samples go to the raw CSV.
std::string EvaluationReportToJson(const eval::EvaluationReport& report,
                                   std::string_view environment,
                                   std::string_view scenario);
// method, mean_reward, normalized_reward, games.
CsvTable EvaluationSummaryTable(const eval::EvaluationReport& report);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_SERIALIZATION_H_
