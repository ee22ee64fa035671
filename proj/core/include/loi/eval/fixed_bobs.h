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


#ifndef LOI_EVAL_FIXED_BOBS_H_
#define LOI_EVAL_FIXED_BOBS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loi/game/grid.h"
#include "loi/policy/checkpoint.h"

namespace loi::eval {

inline constexpr std::array<double, 4> kDefaultFixedBobFractions{0.28, 0.52, 0.76,
                                                                 1.0};

struct FixedBobs {
  std::vector<policy::Checkpoint> checkpoints;
  std::string source_run;
};

// For each fraction f picks the checkpoint whose step_index is nearest to
// f * pool.total_steps (the earlier one on exact ties). Throws
// ValidationError when two fractions resolve to the same checkpoint.
FixedBobs BuildFixedBobs(const policy::CheckpointPool& pool,
                         std::span<const double> fractions = kDefaultFixedBobFractions);

struct MethodCandidates {
  std::string method;
  std::vector<policy::Checkpoint> candidates;
};

struct RewardSample {
  std::string method;
  int candidate = 0;
  int bob = 0;
  int game = 0;
  double reward = 0.0;
};

struct MethodSummary {
  std::string method;
  double mean = 0.0;
  std::optional<double> normalized;
  std::int64_t game_count = 0;
};

struct EvaluationReport {
  std::vector<MethodSummary> methods;
  std::vector<RewardSample> samples;
  int games_per_pair = 0;

  const MethodSummary& method(std::string_view name) const;
  std::vector<double> Rewards(std::string_view method) const;
};

// Plays games_per_pair episodes for every (candidate, bob) pair with the
// candidate in seat 0. Seeds derive from `seed` and the method name, so
// adding a method leaves the other methods' games unchanged. When
// `baseline` is set the report is normalized by that method's mean.
EvaluationReport FixedBobsEval(std::span<const MethodCandidates> methods,
                               const FixedBobs& bobs, int games_per_pair,
                               const game::Environment& env, std::uint64_t seed,
                               const std::optional<std::string>& baseline = "SP",
                               int jobs = 1);

// Sets normalized = mean / mean(baseline) for every method. Throws
// ConfigError if the baseline is absent and DegenerateInputError if its
// mean is zero.
void Normalize(EvaluationReport& report, const std::string& baseline = "SP");

// (r3 - r1) / 2: the improvement per step from SP through PP3 to PP5.
double AverageImprovement(double r1, double r3);

// Pearson coefficient. ValidationError on a length mismatch or fewer than
// two points; UndefinedCorrelationError when either input is constant.
double PearsonCorrelation(std::span<const double> x, std::span<const double> y);

}  // namespace loi::eval

#endif  // LOI_EVAL_FIXED_BOBS_H_
