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

#ifndef LOI_GAME_PAYOFF_H_
#define LOI_GAME_PAYOFF_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace loi {
class Rng;
}

namespace loi::game {

// Row-player payoff of a symmetric two-player matrix game. The column
// player's payoff is never stored; it is always the transpose.
class PayoffMatrix {
 public:
  // row_payoff must be k x k with k >= 2.
  PayoffMatrix(std::string name, const std::vector<std::vector<double>>& row_payoff);

  const std::string& name() const { return name_; }
  int k() const { return k_; }

  // A_row[i][j]: row player plays i, column player plays j.
  double row(int i, int j) const { return row_[i * k_ + j]; }
  // A_col[i][j] = A_row[j][i].
  double col(int i, int j) const { return row_[j * k_ + i]; }

  std::vector<std::vector<double>> RowMatrix() const;

  static PayoffMatrix Chicken();
  static PayoffMatrix PureCoordination();
  static PayoffMatrix PrisonersDilemma();
  static PayoffMatrix StagHunt();
  // The four games above, in that order.
  static std::vector<PayoffMatrix> StandardGames();

 private:
  std::string name_;
  int k_;
  std::vector<double> row_;
};

// Resource counts collected since the last respawn.
class Inventory {
 public:
  Inventory() = default;
  explicit Inventory(int k) : counts_(k, 0) {}
  explicit Inventory(std::vector<std::int64_t> counts);

  int k() const { return static_cast<int>(counts_.size()); }
  std::int64_t count(int type) const { return counts_[type]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const;
  bool empty() const { return total() == 0; }

  void Add(int type) { ++counts_[type]; }
  void Clear();

  // nu_i = rho_i / sum_j rho_j; nullopt when the inventory is empty.
  std::optional<std::vector<double>> MixedWeights() const;

  bool operator==(const Inventory& other) const = default;

 private:
  std::vector<std::int64_t> counts_;
};

struct InteractionPayoff {
  double row = 0.0;
  double col = 0.0;
};

// Reward of each player under mixed strategies:
//   r_row = nu_row' A_row nu_col,  r_col = nu_row' A_col nu_col.
InteractionPayoff ExpectedPayoff(std::span<const double> nu_row,
                                 std::span<const double> nu_col,
                                 const PayoffMatrix& payoff);

// Samples one pure strategy per player from nu and returns the payoff of
// the resulting one-hot pair.
InteractionPayoff SampledPayoff(std::span<const double> nu_row,
                                std::span<const double> nu_col,
                                const PayoffMatrix& payoff, Rng& rng);

// Payoff of an interaction between two inventories. Returns nullopt (the
// beam is inert) when either inventory is empty.
std::optional<InteractionPayoff> ResolveInteraction(const Inventory& row,
                                                    const Inventory& col,
                                                    const PayoffMatrix& payoff);

}  // namespace loi::game

#endif  // LOI_GAME_PAYOFF_H_
