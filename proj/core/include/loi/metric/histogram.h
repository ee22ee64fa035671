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


#ifndef LOI_METRIC_HISTOGRAM_H_
#define LOI_METRIC_HISTOGRAM_H_

#include <cstdint>
#include <map>
#include <span>

namespace loi::metric {

// Discrete reward distribution on a fixed grid of bins,
// bin(r) = floor((r - origin) / bin_width). Only bins with positive mass are
// stored.
class RewardHistogram {
 public:
  RewardHistogram(double bin_width, double origin);

  static RewardHistogram FromSamples(std::span<const double> rewards,
                                     double bin_width, double origin);
  // Zero entries are dropped; the rest must be positive and sum to 1 within
  // 1e-9 (ValidationError otherwise).
  static RewardHistogram FromProbabilities(std::map<std::int64_t, double> probs,
                                           double bin_width, double origin,
                                           std::int64_t sample_count = 0);

  static std::int64_t Bin(double reward, double bin_width, double origin);

  double bin_width() const { return bin_width_; }
  double origin() const { return origin_; }
  std::int64_t sample_count() const { return sample_count_; }
  const std::map<std::int64_t, double>& probabilities() const { return probs_; }
  double Probability(std::int64_t bin) const;

  bool SameBinning(const RewardHistogram& other) const {
    return bin_width_ == other.bin_width_ && origin_ == other.origin_;
  }

  bool operator==(const RewardHistogram&) const = default;

 private:
  double bin_width_;
  double origin_;
  std::int64_t sample_count_ = 0;
  std::map<std::int64_t, double> probs_;
};

// Mixture sum_t weights[t] * conditionals[t]. Throws
// IncompatibleHistogramError when binnings differ and ValidationError when
// the weights are not a probability vector of matching length.
RewardHistogram MarginalDistribution(std::span<const RewardHistogram> conditionals,
                                     std::span<const double> weights);

// sum_t weights[t] * KL(conditionals[t] || marginal), in nats, clamped at 0.
double MutualInformation(std::span<const RewardHistogram> conditionals,
                         std::span<const double> weights);

}  // namespace loi::metric

#endif  // LOI_METRIC_HISTOGRAM_H_
