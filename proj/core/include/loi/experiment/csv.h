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


#ifndef LOI_EXPERIMENT_CSV_H_
#define LOI_EXPERIMENT_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace loi::experiment {

// Shortest decimal string that round-trips the double.
std::string FormatDouble(double value);

// Minimal RFC 4180 table: first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ValidationError if absent.
  std::size_t Column(std::string_view name) const;
  std::string ToString() const;
};

CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);
void WriteCsv(const std::filesystem::path& path, const CsvTable& table);

// Long-format per-game rewards shared by evaluation and allocation
// comparison outputs.
struct RawRewardRow {
  std::string environment;
  std::string scenario;
  std::string method;
  int candidate_id = 0;
  int bob_id = 0;
  int game = 0;
  double reward = 0.0;
};

CsvTable RawRewardTable(const std::vector<RawRewardRow>& rows);
std::vector<RawRewardRow> ParseRawRewards(const CsvTable& table);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_CSV_H_
