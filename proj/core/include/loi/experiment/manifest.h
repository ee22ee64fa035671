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


#ifndef LOI_EXPERIMENT_MANIFEST_H_
#define LOI_EXPERIMENT_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace loi::experiment {

struct ManifestEntry {
  std::string stage;
  std::string path;    // relative to the run directory, '/' separated
  std::string sha256;  // of the file, or DirectoryDigest for a directory
  int sequence = 0;    // order of creation within the run
};

// Record of a pipeline run. Deliberately free of wall-clock data so that
// identical runs produce identical manifests.
struct RunManifest {
  std::string config_echo;  // JSON text, may be empty for single verbs
  std::vector<ManifestEntry> entries;

  // Hashes `relative` under `root` and adds or replaces its entry.
  void Record(const std::filesystem::path& root, std::string_view stage,
              const std::filesystem::path& relative);

  bool HasStage(std::string_view stage) const;
  std::vector<const ManifestEntry*> Stage(std::string_view stage) const;
  // Entry for an exact path; throws ValidationError naming the path.
  const ManifestEntry& Find(std::string_view path) const;

  std::string ToJson() const;
  static RunManifest FromJson(std::string_view text);
};

// SHA-256 over the sorted (relative name, file SHA-256) pairs of a tree.
std::string DirectoryDigest(const std::filesystem::path& dir);

// SHA-256 of a file or DirectoryDigest of a directory.
std::string PathDigest(const std::filesystem::path& path);

RunManifest ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const RunManifest& manifest);

// Checks that every entry exists and still matches its hash. Throws
// ValidationError for a missing artifact and IntegrityError for a changed
// one.
void VerifyManifest(const RunManifest& manifest, const std::filesystem::path& root);

}  // namespace loi::experiment

#endif  // LOI_EXPERIMENT_MANIFEST_H_
