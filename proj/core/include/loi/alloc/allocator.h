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


#ifndef LOI_ALLOC_ALLOCATOR_H_
#define LOI_ALLOC_ALLOCATOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loi::alloc {

// Training methods and their cost in base units: SP trains one policy, PPn
// trains n populations.
enum class Method { kSP, kPP3, kPP5 };

int Units(Method method);
int PopulationSize(Method method);
std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

struct ScenarioLoI {
  std::string scenario;
  double loi = 0.0;
};

struct Assignment {
  std::string scenario;
  double loi = 0.0;
  Method initial = Method::kPP3;  // from the thresholds alone
  Method method = Method::kPP3;   // after balancing
  std::int64_t steps = 0;
};

struct Adjustment {
  enum class Kind { kUpgrade, kDowngrade };
  Kind kind = Kind::kUpgrade;
  std::string scenario;
};

struct AllocationPlan {
  std::vector<Assignment> assignments;  // in input order
  std::int64_t base_unit = 0;
  std::int64_t total_steps = 0;
  double mean = 0.0;
  double sigma = 0.0;  // population standard deviation
  double lower = 0.0;  // mean - sigma
  double upper = 0.0;  // mean + sigma
  int counter = 0;     // #SP - #PP5 before balancing
  std::vector<Adjustment> adjustments;

  const Assignment& at(std::string_view scenario) const;
};

// Scenarios with LoI strictly below mean - sigma get SP, strictly above
// mean + sigma get PP5, the rest PP3. The plan is then balanced back to the
// all-PP3 budget one PP3 scenario at a time: surplus SP upgrades the
// highest-LoI PP3 scenario, surplus PP5 downgrades the lowest. Ties go to
// the last scenario in input order.
//
// Throws ValidationError with fewer than two scenarios or a non-positive
// base unit, InfeasiblePlanError when balancing finds no PP3 scenario.
AllocationPlan Allocate(std::span<const ScenarioLoI> lois, std::int64_t base_unit);

// Every scenario trained with PP3.
AllocationPlan UniformPlan(std::span<const ScenarioLoI> lois, std::int64_t base_unit);

}  // namespace loi::alloc

#endif  // LOI_ALLOC_ALLOCATOR_H_
