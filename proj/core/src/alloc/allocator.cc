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


#include "loi/alloc/allocator.h"

#include <cmath>

#include "loi/common/errors.h"

namespace loi::alloc {

int Units(Method method) {
  switch (method) {
    case Method::kSP:
      return 1;
    case Method::kPP3:
      return 3;
    case Method::kPP5:
      return 5;
  }
  return 0;
}

int PopulationSize(Method method) { return Units(method); }

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kSP:
      return "SP";
    case Method::kPP3:
      return "PP3";
    case Method::kPP5:
      return "PP5";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  if (name == "SP") return Method::kSP;
  if (name == "PP3") return Method::kPP3;
  if (name == "PP5") return Method::kPP5;
  throw ConfigError("unknown training method '" + std::string(name) + "'");
}

const Assignment& AllocationPlan::at(std::string_view scenario) const {
  for (const auto& a : assignments) {
    if (a.scenario == scenario) return a;
  }
  throw ValidationError("scenario '" + std::string(scenario) + "' is not in the plan");
}

namespace {

void CheckInputs(std::span<const ScenarioLoI> lois, std::int64_t base_unit) {
  if (lois.size() < 2) throw ValidationError("allocation needs at least two scenarios");
  if (base_unit <= 0) throw ValidationError("base_unit must be positive");
  for (const auto& s : lois) {
    if (!std::isfinite(s.loi)) {
      throw ValidationError("LoI of scenario '" + s.scenario + "' is not finite");
    }
  }
}

void FillSteps(AllocationPlan& plan) {
  plan.total_steps = 0;
  for (auto& a : plan.assignments) {
    a.steps = Units(a.method) * plan.base_unit;
    plan.total_steps += a.steps;
  }
}

}  // namespace

AllocationPlan Allocate(std::span<const ScenarioLoI> lois, std::int64_t base_unit) {
  CheckInputs(lois, base_unit);
  AllocationPlan plan;
  plan.base_unit = base_unit;
  const double n = static_cast<double>(lois.size());
  // Shifted by the first value so that equal inputs give an exact mean and
  // a zero sigma.
  double shift = 0.0;
  for (const auto& s : lois) shift += s.loi - lois[0].loi;
  plan.mean = lois[0].loi + shift / n;
  double sq = 0.0;
  for (const auto& s : lois) sq += (s.loi - plan.mean) * (s.loi - plan.mean);
  plan.sigma = std::sqrt(sq / n);
  plan.lower = plan.mean - plan.sigma;
  plan.upper = plan.mean + plan.sigma;

  int c = 0;
  for (const auto& s : lois) {
    Method m = Method::kPP3;
    if (s.loi < plan.lower) {
      m = Method::kSP;
      ++c;
    } else if (s.loi > plan.upper) {
      m = Method::kPP5;
      --c;
    }
    plan.assignments.push_back({s.scenario, s.loi, m, m, 0});
  }
  plan.counter = c;

  while (c != 0) {
    int pick = -1;
    for (int i = 0; i < static_cast<int>(plan.assignments.size()); ++i) {
      const Assignment& a = plan.assignments[i];
      if (a.method != Method::kPP3) continue;
      // >= and <= let later scenarios win ties.
      if (pick < 0 || (c > 0 && a.loi >= plan.assignments[pick].loi) ||
          (c < 0 && a.loi <= plan.assignments[pick].loi)) {
        pick = i;
      }
    }
    if (pick < 0) {
      throw InfeasiblePlanError("no PP3 scenario left to rebalance the budget");
    }
    Assignment& a = plan.assignments[pick];
    if (c > 0) {
      a.method = Method::kPP5;
      plan.adjustments.push_back({Adjustment::Kind::kUpgrade, a.scenario});
      --c;
    } else {
      a.method = Method::kSP;
      plan.adjustments.push_back({Adjustment::Kind::kDowngrade, a.scenario});
      ++c;
    }
  }
  FillSteps(plan);
  return plan;
}

AllocationPlan UniformPlan(std::span<const ScenarioLoI> lois, std::int64_t base_unit) {
  CheckInputs(lois, base_unit);
  AllocationPlan plan;
  plan.base_unit = base_unit;
  for (const auto& s : lois) {
    plan.assignments.push_back({s.scenario, s.loi, Method::kPP3, Method::kPP3, 0});
  }
  FillSteps(plan);
  return plan;
}

}  // namespace loi::alloc
