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

#ifndef LOI_COMMON_RANDOM_H_
#define LOI_COMMON_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace loi {

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the distributions below are implemented here
// (rather than with <random> distributions, whose algorithms are
// implementation-defined) so that streams are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);

  // Standard normal via Box-Muller (no cached second variate).
  double Normal();

  bool operator==(const Rng& other) const = default;

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t MixSeed(std::uint64_t value);

// Hierarchical seed derivation. Every sub-computation in the workbench gets
// its seed from its parent's seed plus a label and optional indices, e.g.
//   DeriveSeed(root, "loi", {scenario_index, pair_index, game})
// so that any cell can be re-run in isolation.
std::uint64_t DeriveSeed(std::uint64_t parent, std::string_view label,
                         std::initializer_list<std::uint64_t> indices = {});

}  // namespace loi

#endif  // LOI_COMMON_RANDOM_H_
