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

#ifndef LOI_COMMON_HASH_H_
#define LOI_COMMON_HASH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace loi {

// 64-bit FNV-1a. Not cryptographic; used for content fingerprints.
class Fnv1a64 {
 public:
  void Update(std::span<const std::byte> bytes);
  void Update(std::string_view text);
  void UpdateU64(std::uint64_t value);
  void UpdateDouble(double value);

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string HexU64(std::uint64_t value);

// Lowercase hex SHA-256 of a byte string / file contents.
std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path& path);

}  // namespace loi

#endif  // LOI_COMMON_HASH_H_
