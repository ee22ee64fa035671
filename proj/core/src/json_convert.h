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


#ifndef LOI_SRC_JSON_CONVERT_H_
#define LOI_SRC_JSON_CONVERT_H_

// nlohmann::json conversions shared by the core translation units. Not
// installed.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include "loi/common/errors.h"
#include "loi/policy/policy.h"

namespace loi::policy {

inline void to_json(nlohmann::json& j, const PolicyParams& p) {
  j = nlohmann::json{{"resource_weights", p.resource_weights},
                     {"zap_propensity", p.zap_propensity},
                     {"exploration_temperature", p.exploration_temperature},
                     {"approach_weight", p.approach_weight}};
}

inline void from_json(const nlohmann::json& j, PolicyParams& p) {
  j.at("resource_weights").get_to(p.resource_weights);
  j.at("zap_propensity").get_to(p.zap_propensity);
  j.at("exploration_temperature").get_to(p.exploration_temperature);
  j.at("approach_weight").get_to(p.approach_weight);
}

}  // namespace loi::policy

namespace loi::internal {

inline nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

inline void WriteTextFile(const std::filesystem::path& path,
                          const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

inline void WriteJsonFile(const std::filesystem::path& path,
                          const nlohmann::json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

}  // namespace loi::internal

#endif  // LOI_SRC_JSON_CONVERT_H_
