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


#include "loi/eval/fixed_bobs.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loi/common/errors.h"
#include "loi/common/parallel.h"
#include "loi/policy/rollout.h"

namespace loi::eval {

FixedBobs BuildFixedBobs(const policy::CheckpointPool& pool,
                         std::span<const double> fractions) {
  if (pool.empty()) throw ValidationError("cannot pick Fixed-Bobs from an empty pool");
  if (fractions.empty()) throw ValidationError("no Fixed-Bobs fractions given");
  FixedBobs bobs;
  bobs.source_run = pool.run_id;
  std::vector<std::size_t> picked;
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw ValidationError("Fixed-Bobs fractions must lie in (0, 1]");
    }
    const double target = f * static_cast<double>(pool.total_steps);
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double gap =
          std::abs(static_cast<double>(pool.checkpoints[i].step_index) - target);
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    for (std::size_t prior : picked) {
      if (prior == best) {
        throw ValidationError("Fixed-Bobs fraction " + std::to_string(f) +
                              " resolves to an already chosen checkpoint");
      }
    }
    picked.push_back(best);
    bobs.checkpoints.push_back(pool.checkpoints[best]);
  }
  return bobs;
}

const MethodSummary& EvaluationReport::method(std::string_view name) const {
  for (const auto& m : methods) {
    if (m.method == name) return m;
  }
  throw ConfigError("method '" + std::string(name) + "' is not in the report");
}

std::vector<double> EvaluationReport::Rewards(std::string_view method) const {
  std::vector<double> out;
  for (const auto& s : samples) {
    if (s.method == method) out.push_back(s.reward);
  }
  return out;
}

EvaluationReport FixedBobsEval(std::span<const MethodCandidates> methods,
                               const FixedBobs& bobs, int games_per_pair,
                               const game::Environment& env, std::uint64_t seed,
                               const std::optional<std::string>& baseline,
                               int jobs) {
  if (games_per_pair < 1) throw ValidationError("games_per_pair must be >= 1");
  if (bobs.checkpoints.empty()) throw ValidationError("no Fixed-Bobs checkpoints");
  struct Cell {
    std::size_t method;
    int candidate;
    int bob;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    if (methods[m].candidates.empty()) {
      throw ValidationError("method '" + methods[m].method + "' has no candidates");
    }
    // Game seeds depend only on the (candidate, bob) slot, so every method
    // faces the same episode seeds.
    for (std::size_t c = 0; c < methods[m].candidates.size(); ++c) {
      for (std::size_t b = 0; b < bobs.checkpoints.size(); ++b) {
        cells.push_back({m, static_cast<int>(c), static_cast<int>(b),
                         DeriveSeed(seed, "pair", {c, b})});
      }
    }
  }
  if (baseline) {
    bool found = false;
    for (const auto& m : methods) found = found || m.method == *baseline;
    if (!found) {
      throw ConfigError("normalization baseline '" + *baseline +
                        "' is not among the evaluated methods");
    }
  }

  std::vector<std::vector<double>> rewards(cells.size());
  ParallelFor(cells.size(), jobs, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const auto& candidate = methods[cell.method].candidates[cell.candidate];
    const auto& bob = bobs.checkpoints[cell.bob];
    rewards[i].resize(games_per_pair);
    for (int g = 0; g < games_per_pair; ++g) {
      rewards[i][g] =
          policy::PlayEpisode(env, candidate.params, bob.params,
                              DeriveSeed(cell.seed, "game", {static_cast<std::uint64_t>(g)}))
              .returns[0];
    }
  });

  EvaluationReport report;
  report.games_per_pair = games_per_pair;
  for (const auto& m : methods) report.methods.push_back({m.method, 0.0, {}, 0});
  for (std::size_t i = 0; i < cells.size(); ++i) {
    MethodSummary& summary = report.methods[cells[i].method];
    for (int g = 0; g < games_per_pair; ++g) {
      report.samples.push_back({summary.method, cells[i].candidate, cells[i].bob, g,
                                rewards[i][g]});
      summary.mean += rewards[i][g];
      ++summary.game_count;
    }
  }
  for (auto& summary : report.methods) summary.mean /= summary.game_count;
  if (baseline) Normalize(report, *baseline);
  return report;
}

void Normalize(EvaluationReport& report, const std::string& baseline) {
  const double base = report.method(baseline).mean;
  if (base == 0.0) {
    throw DegenerateInputError("baseline '" + baseline +
                               "' has zero mean reward; cannot normalize");
  }
  for (auto& summary : report.methods) summary.normalized = summary.mean / base;
}

double AverageImprovement(double r1, double r3) { return (r3 - r1) / 2.0; }

double PearsonCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("Pearson inputs differ in length (" +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw ValidationError("Pearson needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("Pearson correlation of a constant sequence");
  }
  // Rounding can push |r| a hair past 1.
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace loi::eval
