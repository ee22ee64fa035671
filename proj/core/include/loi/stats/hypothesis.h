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


#ifndef LOI_STATS_HYPOTHESIS_H_
#define LOI_STATS_HYPOTHESIS_H_

#include <span>
#include <vector>

namespace loi::stats {

struct TestResult {
  double statistic = 0.0;  // F or t
  double p_value = 1.0;
  double dof1 = 0.0;  // between-group dof for F, dof for t
  double dof2 = 0.0;  // within-group dof for F, unused for t
};

// I_x(a, b) by Lentz's continued fraction, using the reflection
// I_x(a, b) = 1 - I_{1-x}(b, a) where it converges faster. Throws
// DomainError unless a, b > 0 and 0 <= x <= 1.
double RegularizedIncompleteBeta(double a, double b, double x);

// Upper tails P(F > f) and P(T > t).
double FDistributionSf(double f, double d1, double d2);
double StudentTSf(double t, double dof);

// Throws DegenerateInputError with fewer than two groups, a group of fewer
// than two samples, or zero within-group variance.
TestResult OneWayAnova(std::span<const std::vector<double>> groups);

// Pooled-variance Student t for the alternative mean(a) > mean(b).
// Throws DegenerateInputError for samples of fewer than two values or zero
// pooled variance.
TestResult TTestOneTailed(std::span<const double> a, std::span<const double> b);

}  // namespace loi::stats

#endif  // LOI_STATS_HYPOTHESIS_H_
