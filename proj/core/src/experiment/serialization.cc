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


#include "loi/experiment/serialization.h"

#include <fstream>
#include <sstream>

#include "json_convert.h"
#include "loi/common/errors.h"

namespace loi::experiment {

using nlohmann::json;

namespace {

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json LoIConfigJson(const metric::LoIConfig& c) {
  return {{"a", c.a},
          {"b", c.b},
          {"m", c.m},
          {"n", c.n},
          {"g", c.g},
          {"alice_stage", policy::StageName(c.alice_stage)},
          {"bob_stage", policy::StageName(c.bob_stage)},
          {"bin_width", c.bin_width},
          {"origin", c.origin},
          {"seed", c.seed},
          {"pool_bobs_across_policies", c.pool_bobs_across_policies},
          {"keep_histograms", c.keep_histograms}};
}

metric::LoIConfig LoIConfigFromJson(const json& j) {
  metric::LoIConfig c;
  j.at("a").get_to(c.a);
  j.at("b").get_to(c.b);
  j.at("m").get_to(c.m);
  j.at("n").get_to(c.n);
  j.at("g").get_to(c.g);
  c.alice_stage = policy::ParseStage(j.at("alice_stage").get<std::string>());
  c.bob_stage = policy::ParseStage(j.at("bob_stage").get<std::string>());
  j.at("bin_width").get_to(c.bin_width);
  j.at("origin").get_to(c.origin);
  j.at("seed").get_to(c.seed);
  j.at("pool_bobs_across_policies").get_to(c.pool_bobs_across_policies);
  j.at("keep_histograms").get_to(c.keep_histograms);
  return c;
}

}  // namespace

std::string TrainingReportToJson(const train::TrainingConfig& config,
                                 const train::TrainingReport& report) {
  json pools = json::array();
  for (const auto& pool : report.pools) {
    json fingerprints = json::array();
    for (const auto& c : pool.checkpoints) fingerprints.push_back(c.fingerprint);
    pools.push_back({{"run_id", pool.run_id},
                     {"checkpoints", pool.size()},
                     {"fingerprints", fingerprints}});
  }
  json curves = json::array();
  for (const auto& curve : report.reward_curve) {
    json c = json::array();
    for (const auto& v : curve) c.push_back(OptionalJson(v));
    curves.push_back(c);
  }
  json mean_curve = json::array();
  for (const auto& v : report.MeanRewardCurve()) mean_curve.push_back(OptionalJson(v));
  const json j{
      {"config",
       {{"scenario_id", config.scenario_id},
        {"environment_id", config.environment_id},
        {"total_steps", config.total_steps},
        {"save_interval", config.save_interval},
        {"population_size", config.population_size},
        {"seed", config.seed},
        {"discount_factor", config.discount_factor},
        {"learner",
         {{"mutation_scale", config.learner.mutation_scale},
          {"episodes_per_eval", config.learner.episodes_per_eval}}}}},
      {"pools", pools},
      {"reward_curve", mean_curve},
      {"population_reward_curves", curves},
      {"co_player_sources", report.co_player_sources},
      {"wall_steps", report.wall_steps}};
  return j.dump(2) + "\n";
}

CsvTable RewardCurveTable(const train::TrainingConfig& config,
                          const train::TrainingReport& report) {
  CsvTable table;
  table.header = {"step", "mean_reward"};
  const auto curve = report.MeanRewardCurve();
  for (std::size_t s = 0; s < curve.size(); ++s) {
    table.rows.push_back(
        {std::to_string(static_cast<std::int64_t>(s + 1) * config.save_interval),
         curve[s] ? FormatDouble(*curve[s]) : ""});
  }
  return table;
}

std::string LoIEstimateToJson(const metric::LoIEstimate& e) {
  json samples = json::array();
  for (const auto& s : e.samples) {
    samples.push_back({{"i", s.i}, {"j", s.j}, {"k", s.k}, {"mi", s.mi}});
  }
  json j{{"scenario_id", e.scenario_id},
         {"environment_id", e.environment_id},
         {"unit", "nats"},
         {"mean", e.mean},
         {"std", e.std},
         {"config", LoIConfigJson(e.config)},
         {"samples", samples}};
  if (!e.histograms.empty()) {
    json hists = json::array();
    for (const auto& h : e.histograms) {
      json bins = json::array();
      for (const auto& [bin, p] : h.histogram.probabilities()) {
        bins.push_back({{"bin", bin}, {"p", p}});
      }
      hists.push_back({{"i", h.i},
                       {"k", h.k},
                       {"j", h.j},
                       {"l", h.l},
                       {"alice_step", h.alice_step},
                       {"bob_step", h.bob_step},
                       {"games", h.histogram.sample_count()},
                       {"bins", bins}});
    }
    j["histograms"] = hists;
  }
  return j.dump(2) + "\n";
}

metric::LoIEstimate LoIEstimateFromJson(std::string_view text) {
  metric::LoIEstimate e;
  try {
    const json j = json::parse(text);
    e.scenario_id = j.at("scenario_id").get<std::string>();
    e.environment_id = j.at("environment_id").get<std::string>();
    e.mean = j.at("mean").get<double>();
    e.std = j.at("std").get<double>();
    e.config = LoIConfigFromJson(j.at("config"));
    for (const auto& s : j.at("samples")) {
      e.samples.push_back({s.at("i").get<int>(), s.at("j").get<int>(),
                           s.at("k").get<int>(), s.at("mi").get<double>()});
    }
    if (j.contains("histograms")) {
      for (const auto& h : j.at("histograms")) {
        std::map<std::int64_t, double> probs;
        for (const auto& b : h.at("bins")) {
          probs[b.at("bin").get<std::int64_t>()] = b.at("p").get<double>();
        }
        e.histograms.push_back(
            {h.at("i").get<int>(), h.at("k").get<int>(), h.at("j").get<int>(),
             h.at("l").get<int>(), h.at("alice_step").get<std::int64_t>(),
             h.at("bob_step").get<std::int64_t>(),
             metric::RewardHistogram::FromProbabilities(
                 std::move(probs), e.config.bin_width, e.config.origin,
                 h.at("games").get<std::int64_t>())});
      }
    }
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed LoI document: ") + ex.what());
  }
  return e;
}

std::string AllocationPlanToJson(const alloc::AllocationPlan& plan,
                                 std::string_view environment) {
  json assignments = json::array();
  for (const auto& a : plan.assignments) {
    assignments.push_back({{"scenario", a.scenario},
                           {"loi", a.loi},
                           {"initial_method", alloc::MethodName(a.initial)},
                           {"method", alloc::MethodName(a.method)},
                           {"steps", a.steps}});
  }
  json adjustments = json::array();
  for (const auto& adj : plan.adjustments) {
    adjustments.push_back(
        {{"kind", adj.kind == alloc::Adjustment::Kind::kUpgrade ? "upgraded"
                                                                 : "downgraded"},
         {"scenario", adj.scenario}});
  }
  const json j{{"environment", environment},
               {"assignments", assignments},
               {"base_unit", plan.base_unit},
               {"total_steps", plan.total_steps},
               {"mean", plan.mean},
               {"sigma", plan.sigma},
               {"thresholds", {{"lower", plan.lower}, {"upper", plan.upper}}},
               {"counter", plan.counter},
               {"adjustments", adjustments}};
  return j.dump(2) + "\n";
}

alloc::AllocationPlan AllocationPlanFromJson(std::string_view text) {
  alloc::AllocationPlan plan;
  try {
    const json j = json::parse(text);
    for (const auto& a : j.at("assignments")) {
      plan.assignments.push_back(
          {a.at("scenario").get<std::string>(), a.at("loi").get<double>(),
           alloc::ParseMethod(a.at("initial_method").get<std::string>()),
           alloc::ParseMethod(a.at("method").get<std::string>()),
           a.at("steps").get<std::int64_t>()});
    }
    plan.base_unit = j.at("base_unit").get<std::int64_t>();
    plan.total_steps = j.at("total_steps").get<std::int64_t>();
    plan.mean = j.at("mean").get<double>();
    plan.sigma = j.at("sigma").get<double>();
    plan.lower = j.at("thresholds").at("lower").get<double>();
    plan.upper = j.at("thresholds").at("upper").get<double>();
    plan.counter = j.at("counter").get<int>();
    for (const auto& adj : j.at("adjustments")) {
      plan.adjustments.push_back({adj.at("kind").get<std::string>() == "upgraded"
                                      ? alloc::Adjustment::Kind::kUpgrade
                                      : alloc::Adjustment::Kind::kDowngrade,
                                  adj.at("scenario").get<std::string>()});
    }
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed allocation plan: ") + ex.what());
  }
  return plan;
}

std::string EvaluationReportToJson(const eval::EvaluationReport& report,
                                   std::string_view environment,
                                   std::string_view scenario) {
  json methods = json::array();
  for (const auto& m : report.methods) {
    methods.push_back({{"method", m.method},
                       {"mean_reward", m.mean},
                       {"normalized_reward", OptionalJson(m.normalized)},
                       {"games", m.game_count}});
  }
  const json j{{"environment", environment},
               {"scenario", scenario},
               {"games_per_pair", report.games_per_pair},
               {"samples", report.samples.size()},
               {"methods", methods}};
  return j.dump(2) + "\n";
}

CsvTable EvaluationSummaryTable(const eval::EvaluationReport& report) {
  CsvTable table;
  table.header = {"method", "mean_reward", "normalized_reward", "games"};
  for (const auto& m : report.methods) {
    table.rows.push_back({m.method, FormatDouble(m.mean),
                          m.normalized ? FormatDouble(*m.normalized) : "",
                          std::to_string(m.game_count)});
  }
  return table;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  internal::WriteTextFile(path, text);
}

}  // namespace loi::experiment
