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


#include "loi/experiment/manifest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_convert.h"
#include "loi/common/errors.h"
#include "loi/common/hash.h"

namespace loi::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

std::string DirectoryDigest(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    files.emplace_back(entry.path().lexically_relative(dir).generic_string(),
                       Sha256File(entry.path()));
  }
  std::sort(files.begin(), files.end());
  std::string listing;
  for (const auto& [name, hash] : files) listing += name + "\t" + hash + "\n";
  return Sha256Hex(listing);
}

std::string PathDigest(const fs::path& path) {
  if (fs::is_directory(path)) return DirectoryDigest(path);
  return Sha256File(path);
}

void RunManifest::Record(const fs::path& root, std::string_view stage,
                         const fs::path& relative) {
  const std::string rel = relative.generic_string();
  const std::string hash = PathDigest(root / relative);
  for (auto& e : entries) {
    if (e.path == rel) {
      e.stage = std::string(stage);
      e.sha256 = hash;
      return;
    }
  }
  const int sequence = entries.empty() ? 0 : entries.back().sequence + 1;
  entries.push_back({std::string(stage), rel, hash, sequence});
}

bool RunManifest::HasStage(std::string_view stage) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const ManifestEntry& e) { return e.stage == stage; });
}

std::vector<const ManifestEntry*> RunManifest::Stage(std::string_view stage) const {
  std::vector<const ManifestEntry*> out;
  for (const auto& e : entries) {
    if (e.stage == stage) out.push_back(&e);
  }
  return out;
}

const ManifestEntry& RunManifest::Find(std::string_view path) const {
  for (const auto& e : entries) {
    if (e.path == path) return e;
  }
  throw ValidationError("manifest has no entry for '" + std::string(path) + "'");
}

std::string RunManifest::ToJson() const {
  json arr = json::array();
  for (const auto& e : entries) {
    arr.push_back({{"sequence", e.sequence},
                   {"stage", e.stage},
                   {"path", e.path},
                   {"sha256", e.sha256}});
  }
  json root{{"format", "loi-run-manifest/1"}, {"entries", arr}};
  if (!config_echo.empty()) root["config"] = json::parse(config_echo);
  return root.dump(2) + "\n";
}

RunManifest RunManifest::FromJson(std::string_view text) {
  RunManifest m;
  try {
    const json root = json::parse(text);
    if (root.contains("config")) m.config_echo = root.at("config").dump(2);
    for (const auto& e : root.at("entries")) {
      m.entries.push_back({e.at("stage").get<std::string>(),
                           e.at("path").get<std::string>(),
                           e.at("sha256").get<std::string>(),
                           e.at("sequence").get<int>()});
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest ReadManifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return RunManifest::FromJson(buffer.str());
}

void WriteManifest(const fs::path& path, const RunManifest& manifest) {
  internal::WriteTextFile(path, manifest.ToJson());
}

void VerifyManifest(const RunManifest& manifest, const fs::path& root) {
  for (const auto& e : manifest.entries) {
    const fs::path full = root / e.path;
    if (!fs::exists(full)) {
      throw ValidationError("artifact '" + e.path + "' of stage '" + e.stage +
                            "' is missing from " + root.string());
    }
    if (PathDigest(full) != e.sha256) {
      throw IntegrityError("artifact '" + e.path + "' of stage '" + e.stage +
                           "' no longer matches its recorded hash");
    }
  }
}

}  // namespace loi::experiment
