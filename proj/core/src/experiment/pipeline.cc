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


#include "loi/experiment/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json_convert.h"
#include "loi/common/errors.h"
#include "loi/common/parallel.h"
#include "loi/experiment/serialization.h"

namespace loi::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

int ParsePopulationSpec(std::string_view method) {
  if (method == "sp" || method == "SP") return 1;
  if (method == "pp3" || method == "PP3") return 3;
  if (method == "pp5" || method == "PP5") return 5;
  if (method.starts_with("pp:")) {
    const std::string digits(method.substr(3));
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int p = std::stoi(digits);
      if (p >= 1) return p;
    }
  }
  throw ConfigError("unknown training method '" + std::string(method) +
                    "' (expected sp, pp3, pp5 or pp:<p>)");
}

void WriteTrainingRun(const fs::path& run_dir, const train::TrainingConfig& config,
                      const train::TrainingReport& report) {
  fs::create_directories(run_dir);
  for (std::size_t q = 0; q < report.pools.size(); ++q) {
    policy::WritePool(report.pools[q], run_dir / ("pop" + std::to_string(q)));
  }
  WriteTextFile(run_dir / "report.json", TrainingReportToJson(config, report));
  WriteCsv(run_dir / "reward_curve.csv", RewardCurveTable(config, report));
}

std::vector<policy::CheckpointPool> ReadTrainingRun(const fs::path& run_dir) {
  if (fs::exists(run_dir / "manifest.json")) return {policy::ReadPool(run_dir)};
  std::vector<policy::CheckpointPool> pools;
  for (int q = 0; fs::exists(run_dir / ("pop" + std::to_string(q))); ++q) {
    pools.push_back(policy::ReadPool(run_dir / ("pop" + std::to_string(q))));
  }
  if (pools.empty()) {
    throw ConfigError("no checkpoint pools found under " + run_dir.string());
  }
  return pools;
}

std::vector<RawRewardRow> EvaluationRows(const eval::EvaluationReport& report,
                                         std::string_view environment,
                                         std::string_view scenario) {
  std::vector<RawRewardRow> rows;
  rows.reserve(report.samples.size());
  for (const auto& s : report.samples) {
    rows.push_back({std::string(environment), std::string(scenario), s.method,
                    s.candidate, s.bob, s.game, s.reward});
  }
  return rows;
}

std::vector<AnovaRow> AnovaByScenario(const std::vector<RawRewardRow>& rows) {
  std::vector<AnovaRow> out;
  std::vector<std::vector<std::vector<double>>> groups;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AnovaRow& a) {
      return a.environment == r.environment && a.scenario == r.scenario;
    });
    if (it == out.end()) {
      out.push_back({r.environment, r.scenario, {}, std::nullopt, ""});
      groups.emplace_back();
      it = out.end() - 1;
    }
    auto& cell_groups = groups[it - out.begin()];
    auto m = std::find(it->methods.begin(), it->methods.end(), r.method);
    if (m == it->methods.end()) {
      it->methods.push_back(r.method);
      cell_groups.emplace_back();
      m = it->methods.end() - 1;
    }
    cell_groups[m - it->methods.begin()].push_back(r.reward);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      out[i].result = stats::OneWayAnova(groups[i]);
    } catch (const NumericalError& e) {
      out[i].note = e.what();
    }
  }
  return out;
}

std::vector<TTestRow> TTestByEnvironment(const std::vector<RawRewardRow>& rows,
                                         std::string_view method_a,
                                         std::string_view method_b) {
  std::vector<TTestRow> out;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> samples;
  for (const auto& r : rows) {
    if (r.method != method_a && r.method != method_b) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const TTestRow& t) { return t.environment == r.environment; });
    if (it == out.end()) {
      out.push_back({r.environment, std::string(method_a), std::string(method_b),
                     std::nullopt, ""});
      samples.emplace_back();
      it = out.end() - 1;
    }
    auto& s = samples[it - out.begin()];
    (r.method == method_a ? s.first : s.second).push_back(r.reward);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      out[i].result = stats::TTestOneTailed(samples[i].first, samples[i].second);
    } catch (const NumericalError& e) {
      out[i].note = e.what();
    }
  }
  return out;
}

CsvTable AnovaTable(const std::vector<AnovaRow>& rows) {
  CsvTable t;
  t.header = {"environment", "scenario", "methods", "grouping", "F",
              "p_value",     "dof_between", "dof_within", "note"};
  for (const auto& r : rows) {
    std::string methods;
    for (const auto& m : r.methods) methods += (methods.empty() ? "" : ";") + m;
    if (r.result) {
      t.rows.push_back({r.environment, r.scenario, methods, "per_game",
                        FormatDouble(r.result->statistic),
                        FormatDouble(r.result->p_value), FormatDouble(r.result->dof1),
                        FormatDouble(r.result->dof2), r.note});
    } else {
      t.rows.push_back({r.environment, r.scenario, methods, "per_game", "", "", "", "",
                        r.note});
    }
  }
  return t;
}

CsvTable TTestTable(const std::vector<TTestRow>& rows) {
  CsvTable t;
  t.header = {"environment", "method_a", "method_b", "alternative",
              "t",           "p_value",  "dof",      "note"};
  for (const auto& r : rows) {
    if (r.result) {
      t.rows.push_back({r.environment, r.method_a, r.method_b, "a_greater",
                        FormatDouble(r.result->statistic),
                        FormatDouble(r.result->p_value), FormatDouble(r.result->dof1),
                        r.note});
    } else {
      t.rows.push_back(
          {r.environment, r.method_a, r.method_b, "a_greater", "", "", "", r.note});
    }
  }
  return t;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunSpec {
  std::string relative;  // run directory under the output root
  train::TrainingConfig config;
  int role = 0;          // index into the cell's run list by purpose
};

class Pipeline {
 public:
  Pipeline(const ExperimentConfig& config, int jobs, std::ostream* log)
      : config_(config), jobs_(std::max(1, jobs)), log_(log), root_(config.output_dir) {}

  RunSummary Run();

 private:
  void Log(const std::string& line) {
    if (log_) *log_ << line << std::endl;
  }
  void Time(const std::string& stage, Clock::time_point start) {
    summary_.stage_seconds[stage] +=
        std::chrono::duration<double>(Clock::now() - start).count();
  }
  void Record(std::string_view stage, const fs::path& relative) {
    summary_.manifest.Record(root_, stage, relative);
  }
  void RunCell(int e, int s);
  void RunAllocation();
  void RunStats();
  void RunVariance();

  const ExperimentConfig& config_;
  int jobs_;
  std::ostream* log_;
  fs::path root_;
  RunSummary summary_;
};

std::string CellPath(const std::string& env, const std::string& scenario) {
  return env + "/" + scenario;
}

void Pipeline::RunCell(int e, int s) {
  const std::string& env_name = config_.environments[e].name;
  const std::string& scen_name = config_.scenarios[s].name;
  const auto ue = static_cast<std::uint64_t>(e);
  const auto us = static_cast<std::uint64_t>(s);
  const game::Environment env = config_.MakeEnvironment(e, s);
  const std::string cell = CellPath(env_name, scen_name);
  Log("[" + cell + "] training");

  // Every training run of the cell, trained in parallel.
  std::vector<RunSpec> runs;
  const std::string pools = "pools/" + cell + "/";
  runs.push_back({pools + "fixed_bobs",
                  config_.MakeTrainingConfig(e, s, config_.FixedBobsSteps(), 1,
                                             DeriveSeed(config_.seed, "fixed_bobs", {ue, us})),
                  0});
  const int loi_runs = config_.loi.a + config_.loi.b;
  for (int x = 0; x < loi_runs; ++x) {
    runs.push_back(
        {pools + "loi/policy" + std::to_string(x),
         config_.MakeTrainingConfig(
             e, s, config_.LoIPolicySteps(), 1,
             DeriveSeed(config_.seed, "loi_policy", {ue, us, static_cast<std::uint64_t>(x)})),
         1});
  }
  for (const auto& method : config_.evaluation.methods) {
    const int p = ParsePopulationSpec(method);
    const int seeds = method == "SP" ? config_.evaluation.sp_seeds : 1;
    for (int i = 0; i < seeds; ++i) {
      const std::string name =
          method == "SP" ? "SP_seed" + std::to_string(i) : method;
      runs.push_back(
          {pools + "eval/" + name,
           config_.MakeTrainingConfig(
               e, s, config_.EvalPolicySteps(), p,
               DeriveSeed(config_.seed, "eval_policy",
                          {ue, us, static_cast<std::uint64_t>(p),
                           static_cast<std::uint64_t>(i)})),
           2});
    }
  }
  auto start = Clock::now();
  std::vector<train::TrainingReport> reports(runs.size());
  ParallelFor(runs.size(), jobs_, [&](std::size_t r) {
    reports[r] = train::Train(runs[r].config, env);
  });
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::int64_t expected =
        runs[r].config.total_steps * runs[r].config.population_size;
    if (reports[r].wall_steps != expected) {
      throw NumericalError("step audit mismatch for " + runs[r].relative);
    }
    WriteTrainingRun(root_ / runs[r].relative, runs[r].config, reports[r]);
    Record("pools", runs[r].relative);
  }
  Time("train", start);

  // LoI.
  Log("[" + cell + "] level of influence");
  start = Clock::now();
  std::vector<policy::CheckpointPool> alice;
  std::vector<policy::CheckpointPool> bob;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].role != 1) continue;
    auto& target = static_cast<int>(alice.size()) < config_.loi.a ? alice : bob;
    target.push_back(reports[r].pools[0]);
  }
  metric::LoIConfig loi_config = config_.loi;
  loi_config.seed = DeriveSeed(config_.seed, "loi", {ue, us});
  CellOutcome outcome;
  outcome.environment = env_name;
  outcome.scenario = scen_name;
  outcome.loi = metric::EstimateLoI(alice, bob, loi_config, env, jobs_);
  const std::string loi_path = "loi/" + cell + ".json";
  WriteTextFile(root_ / loi_path, LoIEstimateToJson(outcome.loi));
  Record("loi", loi_path);
  Time("loi", start);

  // Fixed-Bobs evaluation of every run's final checkpoints.
  Log("[" + cell + "] evaluation");
  start = Clock::now();
  const eval::FixedBobs bobs =
      eval::BuildFixedBobs(reports[0].pools[0], config_.evaluation.fixed_bobs_fractions);
  std::vector<eval::MethodCandidates> candidates;
  for (const auto& method : config_.evaluation.methods) {
    eval::MethodCandidates mc{method, {}};
    const int p = ParsePopulationSpec(method);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].role != 2 || runs[r].config.population_size != p) continue;
      for (const auto& pool : reports[r].pools) mc.candidates.push_back(pool.latest());
    }
    candidates.push_back(std::move(mc));
  }
  outcome.evaluation = eval::FixedBobsEval(candidates, bobs, config_.evaluation.games_per_pair,
                                           env, DeriveSeed(config_.seed, "evaluate", {ue, us}),
                                           std::nullopt, jobs_);
  try {
    eval::Normalize(outcome.evaluation, "SP");
  } catch (const DegenerateInputError&) {
    Log("[" + cell + "] SP mean reward is zero; normalized rewards left empty");
  }
  const std::string eval_dir = "eval/" + cell + "/";
  WriteCsv(root_ / (eval_dir + "raw.csv"),
           RawRewardTable(EvaluationRows(outcome.evaluation, env_name, scen_name)));
  WriteCsv(root_ / (eval_dir + "summary.csv"), EvaluationSummaryTable(outcome.evaluation));
  WriteTextFile(root_ / (eval_dir + "report.json"),
                EvaluationReportToJson(outcome.evaluation, env_name, scen_name));
  Record("evaluation", eval_dir + "raw.csv");
  Record("evaluation", eval_dir + "summary.csv");
  Record("evaluation", eval_dir + "report.json");
  Time("evaluate", start);
  summary_.cells.push_back(std::move(outcome));
}

void Pipeline::RunAllocation() {
  json plans_doc = json::array();
  CsvTable grid;
  grid.header = {"scenario"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : config_.scenarios) rows.push_back({s.name});

  if (config_.allocation.enabled) {
    for (std::size_t e = 0; e < config_.environments.size(); ++e) {
      const std::string& env_name = config_.environments[e].name;
      std::vector<alloc::ScenarioLoI> lois;
      std::vector<const CellOutcome*> cells;
      for (const auto& c : summary_.cells) {
        if (c.environment == env_name) {
          lois.push_back({c.scenario, c.loi.mean});
          cells.push_back(&c);
        }
      }
      EnvironmentPlans plans{env_name, alloc::Allocate(lois, config_.BaseUnit()),
                             alloc::UniformPlan(lois, config_.BaseUnit())};
      const std::string dir = "allocation/" + env_name + "/";
      WriteTextFile(root_ / (dir + "plan.json"),
                    AllocationPlanToJson(plans.heuristic, env_name));
      WriteTextFile(root_ / (dir + "uniform.json"),
                    AllocationPlanToJson(plans.uniform, env_name));
      Record("allocation", dir + "plan.json");
      Record("allocation", dir + "uniform.json");
      grid.header.push_back(env_name);
      for (std::size_t s = 0; s < rows.size(); ++s) {
        rows[s].push_back(std::to_string(plans.heuristic.assignments[s].steps));
      }

      // The agents of a plan are the evaluation runs of the assigned method:
      // training is seed-determined, so retraining them would reproduce the
      // same checkpoints. SP contributes its first seed only.
      for (const auto* plan : {&plans.uniform, &plans.heuristic}) {
        const std::string label = plan == &plans.uniform ? "uniform" : "heuristic";
        for (std::size_t s = 0; s < cells.size(); ++s) {
          const auto& evaluation = cells[s]->evaluation;
          const double sp_mean = evaluation.method("SP").mean;
          if (sp_mean == 0.0) continue;  // no normalization for this cell
          const std::string method(alloc::MethodName(plan->assignments[s].method));
          for (const auto& sample : evaluation.samples) {
            if (sample.method != method) continue;
            if (method == "SP" && sample.candidate != 0) continue;
            summary_.comparison.push_back({env_name, cells[s]->scenario, label,
                                           sample.candidate, sample.bob, sample.game,
                                           sample.reward / sp_mean});
          }
        }
      }
      summary_.plans.push_back(std::move(plans));
    }
  }
  grid.rows = std::move(rows);
  WriteCsv(root_ / "allocation/plan.csv", grid);
  Record("allocation", "allocation/plan.csv");
  WriteCsv(root_ / "allocation/comparison_raw.csv", RawRewardTable(summary_.comparison));
  Record("comparison", "allocation/comparison_raw.csv");
}

void Pipeline::RunStats() {
  std::vector<RawRewardRow> rows;
  for (const auto& c : summary_.cells) {
    auto cell_rows = EvaluationRows(c.evaluation, c.environment, c.scenario);
    rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
  }
  summary_.anova = AnovaByScenario(rows);
  summary_.ttest = TTestByEnvironment(summary_.comparison, "heuristic", "uniform");
  WriteCsv(root_ / "stats/anova.csv", AnovaTable(summary_.anova));
  WriteCsv(root_ / "stats/ttest.csv", TTestTable(summary_.ttest));
  Record("stats", "stats/anova.csv");
  Record("stats", "stats/ttest.csv");
}

void Pipeline::RunVariance() {
  json pairs = json::array();
  if (config_.variance.enabled) {
    for (const auto& pair : config_.variance.pairs) {
      const int e = config_.EnvironmentIndex(pair.environment);
      const int s = config_.ScenarioIndex(pair.scenario);
      Log("[" + CellPath(pair.environment, pair.scenario) + "] variance study");
      const game::Environment env = config_.MakeEnvironment(e, s);
      metric::VarianceStudyConfig study;
      study.b_values = config_.variance.b_values;
      study.repeats = config_.variance.repeats;
      study.loi = config_.loi;
      study.training = config_.MakeTrainingConfig(e, s, config_.LoIPolicySteps(), 1, 0);
      study.seed = DeriveSeed(config_.seed, "variance_study",
                              {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(s)});
      VarianceOutcome outcome{pair.environment, pair.scenario,
                              metric::LoIVarianceStudy(study, env, jobs_)};
      json points = json::array();
      for (const auto& p : outcome.points) {
        points.push_back({{"b", p.b}, {"variance", p.variance}, {"loi_means", p.loi_means}});
      }
      pairs.push_back({{"environment", pair.environment},
                       {"scenario", pair.scenario},
                       {"repeats", study.repeats},
                       {"points", points}});
      summary_.variance.push_back(std::move(outcome));
    }
  }
  const json doc{{"enabled", config_.variance.enabled},
                 {"variance", "population"},
                 {"pairs", pairs}};
  WriteTextFile(root_ / "variance/variance_study.json", doc.dump(2) + "\n");
  Record("variance", "variance/variance_study.json");
}

RunSummary Pipeline::Run() {
  config_.Validate();
  if (config_.allocation.enabled) {
    for (const char* m : {"PP3", "PP5"}) {
      if (std::find(config_.evaluation.methods.begin(), config_.evaluation.methods.end(),
                    m) == config_.evaluation.methods.end()) {
        throw ConfigError(std::string("allocation needs evaluation method ") + m);
      }
    }
  }
  fs::create_directories(root_);
  summary_.manifest.config_echo = ConfigEcho(config_);
  for (std::size_t e = 0; e < config_.environments.size(); ++e) {
    for (std::size_t s = 0; s < config_.scenarios.size(); ++s) {
      RunCell(static_cast<int>(e), static_cast<int>(s));
    }
  }
  auto start = Clock::now();
  RunAllocation();
  Time("allocate", start);
  start = Clock::now();
  RunStats();
  Time("stats", start);
  start = Clock::now();
  RunVariance();
  Time("variance", start);
  WriteManifest(root_ / "manifest.json", summary_.manifest);
  WriteTextFile(root_ / "timings.json",
                json{{"seconds", summary_.stage_seconds}}.dump(2) + "\n");
  return std::move(summary_);
}

}  // namespace

RunSummary RunAll(const ExperimentConfig& config, int jobs, std::ostream* log) {
  Pipeline pipeline(config, jobs, log);
  return pipeline.Run();
}

}  // namespace loi::experiment
