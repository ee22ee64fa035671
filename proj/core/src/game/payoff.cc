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

#include "loi/game/payoff.h"

#include <cmath>
#include <numeric>
#include <utility>

#include "loi/common/errors.h"
#include "loi/common/random.h"

namespace loi::game {

PayoffMatrix::PayoffMatrix(std::string name,
                           const std::vector<std::vector<double>>& row_payoff)
    : name_(std::move(name)), k_(static_cast<int>(row_payoff.size())) {
  if (k_ < 2) {
    throw ValidationError("payoff matrix '" + name_ +
                          "' needs at least 2 strategies");
  }
  row_.reserve(k_ * k_);
  for (const auto& r : row_payoff) {
    if (static_cast<int>(r.size()) != k_) {
      throw ValidationError("payoff matrix '" + name_ + "' is not square");
    }
    for (double v : r) {
      if (!std::isfinite(v)) {
        throw ValidationError("payoff matrix '" + name_ +
                              "' has a non-finite entry");
      }
      row_.push_back(v);
    }
  }
}

std::vector<std::vector<double>> PayoffMatrix::RowMatrix() const {
  std::vector<std::vector<double>> out(k_, std::vector<double>(k_));
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) out[i][j] = row(i, j);
  }
  return out;
}

PayoffMatrix PayoffMatrix::Chicken() {
  return PayoffMatrix("chicken", {{3, 2}, {5, 0}});
}
PayoffMatrix PayoffMatrix::PureCoordination() {
  return PayoffMatrix("pure_coordination", {{1, 0}, {0, 1}});
}
PayoffMatrix PayoffMatrix::PrisonersDilemma() {
  return PayoffMatrix("prisoners_dilemma", {{3, 0}, {5, 1}});
}
PayoffMatrix PayoffMatrix::StagHunt() {
  return PayoffMatrix("stag_hunt", {{4, 0}, {2, 2}});
}

std::vector<PayoffMatrix> PayoffMatrix::StandardGames() {
  return {Chicken(), PureCoordination(), PrisonersDilemma(), StagHunt()};
}

Inventory::Inventory(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  for (std::int64_t c : counts_) {
    if (c < 0) throw ValidationError("inventory counts must be non-negative");
  }
}

std::int64_t Inventory::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

void Inventory::Clear() { std::fill(counts_.begin(), counts_.end(), 0); }

std::optional<std::vector<double>> Inventory::MixedWeights() const {
  const std::int64_t sum = total();
  if (sum == 0) return std::nullopt;
  std::vector<double> nu(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    nu[i] = static_cast<double>(counts_[i]) / static_cast<double>(sum);
  }
  return nu;
}

InteractionPayoff ExpectedPayoff(std::span<const double> nu_row,
                                 std::span<const double> nu_col,
                                 const PayoffMatrix& payoff) {
  const int k = payoff.k();
  if (static_cast<int>(nu_row.size()) != k ||
      static_cast<int>(nu_col.size()) != k) {
    throw ValidationError("strategy weights do not match the payoff size");
  }
  // Contract the column strategy first, then take the dot product with the
  // row strategy.
  InteractionPayoff out;
  for (int i = 0; i < k; ++i) {
    double row_times_col = 0.0;
    double col_times_col = 0.0;
    for (int j = 0; j < k; ++j) {
      row_times_col += payoff.row(i, j) * nu_col[j];
      col_times_col += payoff.col(i, j) * nu_col[j];
    }
    out.row += nu_row[i] * row_times_col;
    out.col += nu_row[i] * col_times_col;
  }
  return out;
}

namespace {

int SampleStrategy(std::span<const double> nu, Rng& rng) {
  const double u = rng.Uniform();
  double cumulative = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    cumulative += nu[i];
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

}  // namespace

InteractionPayoff SampledPayoff(std::span<const double> nu_row,
                                std::span<const double> nu_col,
                                const PayoffMatrix& payoff, Rng& rng) {
  const int i = SampleStrategy(nu_row, rng);
  const int j = SampleStrategy(nu_col, rng);
  return {payoff.row(i, j), payoff.col(i, j)};
}

std::optional<InteractionPayoff> ResolveInteraction(const Inventory& row,
                                                    const Inventory& col,
                                                    const PayoffMatrix& payoff) {
  auto nu_row = row.MixedWeights();
  auto nu_col = col.MixedWeights();
  if (!nu_row || !nu_col) return std::nullopt;
  return ExpectedPayoff(*nu_row, *nu_col, payoff);
}

}  // namespace loi::game
