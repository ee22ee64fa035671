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


#ifndef LOI_EXPERIMENT_REPORT_H_
#define LOI_EXPERIMENT_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace loi::experiment {

// Normal-approximation 95% half-width, 1.96 * sd / sqrt(n) with the sample
// standard deviation. Zero for fewer than two values.
double ConfidenceHalfWidth95(const std::vector<double>& values);

// Verifies every artifact of the run against the manifest and writes six
// CSV tables into out_dir: normalized_rewards, loi_table, improvement_table,
// pearson_table, allocation_comparison and variance_study. A stage absent
// from the manifest raises ValidationError naming it. Returns the written
// paths.
std::vector<std::filesystem::path> WriteReport(const std::filesystem::path& manifest_path,
                                               const std::filesystem::path& out_dir);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_REPORT_H_
