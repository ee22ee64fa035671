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


#include "loi/experiment/csv.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json_convert.h"
#include "loi/common/errors.h"

namespace loi::experiment {

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::size_t CsvTable::Column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("CSV has no column '" + std::string(name) + "'");
}

namespace {

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void AppendRow(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    out += Quote(row[i]);
  }
  out += '\n';
}

double ParseDouble(const std::string& text, int row) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ParseError(row, 0, "'" + text + "' is not a number");
  }
  return value;
}

int ParseInt(const std::string& text, int row) {
  int value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ParseError(row, 0, "'" + text + "' is not an integer");
  }
  return value;
}

}  // namespace

std::string CsvTable::ToString() const {
  std::string out;
  AppendRow(out, header);
  for (const auto& row : rows) AppendRow(out, row);
  return out;
}

CsvTable ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  int line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
      records.push_back(std::move(record));
      record.clear();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError(line, 0, "unterminated quoted CSV field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ParseError(1, 0, "CSV has no header");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() == 1 && records[r][0].empty()) continue;
    if (records[r].size() != table.header.size()) {
      throw ParseError(static_cast<int>(r + 1), 0,
                       "CSV row has " + std::to_string(records[r].size()) +
                           " fields, header has " +
                           std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str());
}

void WriteCsv(const std::filesystem::path& path, const CsvTable& table) {
  internal::WriteTextFile(path, table.ToString());
}

CsvTable RawRewardTable(const std::vector<RawRewardRow>& rows) {
  CsvTable table;
  table.header = {"environment", "scenario", "method", "candidate_id",
                  "bob_id",      "game",     "reward"};
  for (const auto& r : rows) {
    table.rows.push_back({r.environment, r.scenario, r.method,
                          std::to_string(r.candidate_id), std::to_string(r.bob_id),
                          std::to_string(r.game), FormatDouble(r.reward)});
  }
  return table;
}

std::vector<RawRewardRow> ParseRawRewards(const CsvTable& table) {
  const std::size_t env = table.Column("environment");
  const std::size_t scenario = table.Column("scenario");
  const std::size_t method = table.Column("method");
  const std::size_t candidate = table.Column("candidate_id");
  const std::size_t bob = table.Column("bob_id");
  const std::size_t game = table.Column("game");
  const std::size_t reward = table.Column("reward");
  std::vector<RawRewardRow> out;
  out.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const int line = static_cast<int>(i + 2);
    out.push_back({row[env], row[scenario], row[method], ParseInt(row[candidate], line),
                   ParseInt(row[bob], line), ParseInt(row[game], line),
                   ParseDouble(row[reward], line)});
  }
  return out;
}

}  // namespace loi::experiment
