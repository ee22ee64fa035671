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


#include "loi/metric/histogram.h"

#include <cmath>
#include <string>

#include "loi/common/errors.h"

namespace loi::metric {

RewardHistogram::RewardHistogram(double bin_width, double origin)
    : bin_width_(bin_width), origin_(origin) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw ValidationError("bin_width must be positive");
  }
  if (!std::isfinite(origin)) throw ValidationError("origin must be finite");
}

std::int64_t RewardHistogram::Bin(double reward, double bin_width, double origin) {
  return static_cast<std::int64_t>(std::floor((reward - origin) / bin_width));
}

RewardHistogram RewardHistogram::FromSamples(std::span<const double> rewards,
                                             double bin_width, double origin) {
  RewardHistogram h(bin_width, origin);
  if (rewards.empty()) throw ValidationError("histogram needs at least one sample");
  std::map<std::int64_t, std::int64_t> counts;
  for (double r : rewards) {
    if (!std::isfinite(r)) throw NumericalError("non-finite reward sample");
    ++counts[Bin(r, bin_width, origin)];
  }
  const double n = static_cast<double>(rewards.size());
  for (const auto& [bin, count] : counts) h.probs_[bin] = count / n;
  h.sample_count_ = static_cast<std::int64_t>(rewards.size());
  return h;
}

RewardHistogram RewardHistogram::FromProbabilities(
    std::map<std::int64_t, double> probs, double bin_width, double origin,
    std::int64_t sample_count) {
  RewardHistogram h(bin_width, origin);
  double sum = 0.0;
  for (auto it = probs.begin(); it != probs.end();) {
    if (!(it->second >= 0.0) || !std::isfinite(it->second)) {
      throw ValidationError("histogram probabilities must be non-negative");
    }
    sum += it->second;
    it = it->second == 0.0 ? probs.erase(it) : std::next(it);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("histogram probabilities sum to " + std::to_string(sum));
  }
  h.probs_ = std::move(probs);
  h.sample_count_ = sample_count;
  return h;
}

double RewardHistogram::Probability(std::int64_t bin) const {
  const auto it = probs_.find(bin);
  return it == probs_.end() ? 0.0 : it->second;
}

namespace {

void CheckMixture(std::span<const RewardHistogram> conditionals,
                  std::span<const double> weights) {
  if (conditionals.empty()) throw ValidationError("no conditional histograms");
  if (weights.size() != conditionals.size()) {
    throw ValidationError("weights length " + std::to_string(weights.size()) +
                          " does not match " +
                          std::to_string(conditionals.size()) + " conditionals");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("mixture weights must be non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("mixture weights must sum to 1");
  for (const auto& h : conditionals) {
    if (!h.SameBinning(conditionals.front())) {
      throw IncompatibleHistogramError("conditional histograms use different bins");
    }
  }
}

}  // namespace

RewardHistogram MarginalDistribution(std::span<const RewardHistogram> conditionals,
                                     std::span<const double> weights) {
  CheckMixture(conditionals, weights);
  std::map<std::int64_t, double> mix;
  for (std::size_t t = 0; t < conditionals.size(); ++t) {
    if (weights[t] == 0.0) continue;
    for (const auto& [bin, p] : conditionals[t].probabilities()) {
      mix[bin] += weights[t] * p;
    }
  }
  std::int64_t samples = 0;
  for (const auto& h : conditionals) samples += h.sample_count();
  const RewardHistogram& first = conditionals.front();
  return RewardHistogram::FromProbabilities(std::move(mix), first.bin_width(),
                                            first.origin(), samples);
}

double MutualInformation(std::span<const RewardHistogram> conditionals,
                         std::span<const double> weights) {
  const RewardHistogram marginal = MarginalDistribution(conditionals, weights);
  double total = 0.0;
  for (std::size_t t = 0; t < conditionals.size(); ++t) {
    if (weights[t] == 0.0) continue;
    double kl = 0.0;
    for (const auto& [bin, p] : conditionals[t].probabilities()) {
      kl += p * std::log(p / marginal.Probability(bin));
    }
    total += weights[t] * kl;
  }
  if (!std::isfinite(total)) {
    throw NumericalError("mutual information produced a non-finite value");
  }
  return total < 0.0 ? 0.0 : total;
}

}  // namespace loi::metric
