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


// loi: command-line front end for the Level of Influence workbench.
//
//   loi run-all --config configs/desk.json --jobs 4
//   loi train --config c.json --scenario small --method pp:3
//   loi loi --config c.json --scenario small --alice A --bob B1 B2
//   loi allocate --loi a.json b.json --base-unit 10000000
//   loi evaluate --config c.json --scenario small --candidates SP=dir --bobs dir
//   loi stats --report raw.csv --test anova
//   loi report --run runs/desk/manifest.json
//
// Exit codes: 0 success, 2 configuration error, 3 data or validation error,
// 4 numerical error, 1 anything unexpected.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loi/alloc/allocator.h"
#include "loi/common/errors.h"
#include "loi/common/random.h"
#include "loi/eval/fixed_bobs.h"
#include "loi/experiment/config.h"
#include "loi/experiment/csv.h"
#include "loi/experiment/manifest.h"
#include "loi/experiment/pipeline.h"
#include "loi/experiment/report.h"
#include "loi/experiment/serialization.h"
#include "loi/metric/loi.h"
#include "loi/train/trainer.h"

namespace fs = std::filesystem;
namespace ex = loi::experiment;

namespace {

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  std::optional<double> scale;
};

ex::ExperimentConfig LoadWithOverrides(const GlobalFlags& g) {
  if (g.config.empty()) throw loi::ConfigError("this command needs --config");
  ex::ExperimentConfig config = ex::LoadConfig(g.config);
  if (g.seed) config.seed = *g.seed;
  if (g.scale) {
    config.scale = *g.scale;
    config.Validate();
  }
  if (!g.out.empty()) config.output_dir = g.out;
  return config;
}

fs::path OutputRoot(const GlobalFlags& g) {
  if (!g.out.empty()) return g.out;
  if (!g.config.empty()) return ex::LoadConfig(g.config).output_dir;
  return fs::current_path();
}

// Adds `relative` to <root>/manifest.json, creating the manifest if needed.
void RecordArtifact(const fs::path& root, const std::string& stage,
                    const fs::path& relative) {
  const fs::path path = root / "manifest.json";
  ex::RunManifest manifest;
  if (fs::exists(path)) manifest = ex::ReadManifest(path);
  manifest.Record(root, stage, relative);
  ex::WriteManifest(path, manifest);
}

// Relative path if `p` is inside `root`, otherwise empty.
std::optional<fs::path> InsideRoot(const fs::path& root, const fs::path& p) {
  const fs::path rel = fs::weakly_canonical(p).lexically_relative(fs::weakly_canonical(root));
  if (rel.empty() || *rel.begin() == "..") return std::nullopt;
  return rel;
}

std::vector<loi::policy::CheckpointPool> ReadPools(const std::vector<std::string>& dirs) {
  std::vector<loi::policy::CheckpointPool> pools;
  for (const auto& d : dirs) {
    for (auto& p : ex::ReadTrainingRun(d)) pools.push_back(std::move(p));
  }
  return pools;
}

int CmdTrain(const GlobalFlags& g, const std::string& env_name,
             const std::string& scenario, const std::string& method,
             std::optional<std::int64_t> steps) {
  const auto config = LoadWithOverrides(g);
  const int e = env_name.empty() ? 0 : config.EnvironmentIndex(env_name);
  const int s = config.ScenarioIndex(scenario);
  const int p = ex::ParsePopulationSpec(method);
  const std::int64_t total = steps ? *steps : config.EvalPolicySteps();
  const auto training = config.MakeTrainingConfig(
      e, s, total, p,
      loi::DeriveSeed(config.seed, "train",
                      {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(s),
                       static_cast<std::uint64_t>(p)}));
  const auto report = loi::train::Train(training, config.MakeEnvironment(e, s), g.jobs);
  const fs::path rel = fs::path("train") / config.environments[e].name / scenario /
                       (p == 1 ? std::string("sp") : "pp" + std::to_string(p));
  ex::WriteTrainingRun(config.output_dir / rel, training, report);
  RecordArtifact(config.output_dir, "train", rel);
  std::cout << "trained " << report.pools.size() << " pool(s) of "
            << report.pools[0].size() << " checkpoints, " << report.wall_steps
            << " environment steps -> " << (config.output_dir / rel).string() << "\n";
  return 0;
}

int CmdLoI(const GlobalFlags& g, const std::string& env_name, const std::string& scenario,
           const std::vector<std::string>& alice_dirs,
           const std::vector<std::string>& bob_dirs, std::optional<int> m,
           std::optional<int> n, std::optional<int> games, bool histograms,
           const std::string& output) {
  const auto config = LoadWithOverrides(g);
  const int e = env_name.empty() ? 0 : config.EnvironmentIndex(env_name);
  const int s = config.ScenarioIndex(scenario);
  const auto alice = ReadPools(alice_dirs);
  const auto bob = ReadPools(bob_dirs);
  loi::metric::LoIConfig loi_config = config.loi;
  loi_config.a = static_cast<int>(alice.size());
  loi_config.b = static_cast<int>(bob.size());
  if (m) loi_config.m = *m;
  if (n) loi_config.n = *n;
  if (games) loi_config.g = *games;
  loi_config.keep_histograms = loi_config.keep_histograms || histograms;
  loi_config.seed = loi::DeriveSeed(
      config.seed, "loi", {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(s)});
  const auto estimate = loi::metric::EstimateLoI(alice, bob, loi_config,
                                                 config.MakeEnvironment(e, s), g.jobs);
  const fs::path path = output.empty() ? config.output_dir / "loi" /
                                             config.environments[e].name /
                                             (scenario + ".json")
                                       : fs::path(output);
  ex::WriteTextFile(path, ex::LoIEstimateToJson(estimate));
  if (auto rel = InsideRoot(config.output_dir, path)) {
    RecordArtifact(config.output_dir, "loi", *rel);
  }
  std::cout << "LoI " << config.environments[e].name << "/" << scenario << ": mean "
            << estimate.mean << " nats, std " << estimate.std << " over "
            << estimate.samples.size() << " samples -> " << path.string() << "\n";
  return 0;
}

int CmdAllocate(const GlobalFlags& g, const std::vector<std::string>& loi_files,
                std::optional<std::int64_t> base_unit, const std::string& output) {
  std::int64_t unit = 0;
  if (base_unit) {
    unit = *base_unit;
  } else if (!g.config.empty()) {
    unit = LoadWithOverrides(g).BaseUnit();
  } else {
    throw loi::ConfigError("allocate needs --base-unit or --config");
  }
  std::vector<loi::alloc::ScenarioLoI> lois;
  std::string environment;
  for (const auto& f : loi_files) {
    const auto estimate = ex::LoIEstimateFromJson(ex::ReadTextFile(f));
    if (environment.empty()) environment = estimate.environment_id;
    if (estimate.environment_id != environment) {
      throw loi::ValidationError("LoI files mix environments '" + environment +
                                 "' and '" + estimate.environment_id + "'");
    }
    lois.push_back({estimate.scenario_id, estimate.mean});
  }
  const auto plan = loi::alloc::Allocate(lois, unit);
  const fs::path root = OutputRoot(g);
  const fs::path dir = output.empty() ? root / "allocation" / environment : fs::path(output);
  ex::WriteTextFile(dir / "plan.json", ex::AllocationPlanToJson(plan, environment));
  ex::CsvTable table;
  table.header = {"scenario", environment};
  for (const auto& a : plan.assignments) {
    table.rows.push_back({a.scenario, std::to_string(a.steps)});
  }
  ex::WriteCsv(dir / "plan.csv", table);
  if (auto rel = InsideRoot(root, dir)) {
    RecordArtifact(root, "allocation", *rel / "plan.json");
    RecordArtifact(root, "allocation", *rel / "plan.csv");
  }
  for (const auto& a : plan.assignments) {
    std::cout << a.scenario << "\t" << loi::alloc::MethodName(a.method) << "\t" << a.steps
              << "\n";
  }
  std::cout << "total\t\t" << plan.total_steps << "\n";
  return 0;
}

int CmdEvaluate(const GlobalFlags& g, const std::string& env_name,
                const std::string& scenario, const std::vector<std::string>& candidate_specs,
                const std::string& bobs_dir, std::optional<int> games,
                const std::string& output) {
  const auto config = LoadWithOverrides(g);
  const int e = env_name.empty() ? 0 : config.EnvironmentIndex(env_name);
  const int s = config.ScenarioIndex(scenario);
  std::vector<loi::eval::MethodCandidates> methods;
  for (const auto& spec : candidate_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw loi::ConfigError("--candidates expects METHOD=DIR, got '" + spec + "'");
    }
    const std::string method = spec.substr(0, eq);
    auto it = std::find_if(methods.begin(), methods.end(),
                           [&](const auto& mc) { return mc.method == method; });
    if (it == methods.end()) {
      methods.push_back({method, {}});
      it = methods.end() - 1;
    }
    for (const auto& pool : ex::ReadTrainingRun(spec.substr(eq + 1))) {
      it->candidates.push_back(pool.latest());
    }
  }
  const auto bob_pools = ex::ReadTrainingRun(bobs_dir);
  const auto bobs =
      loi::eval::BuildFixedBobs(bob_pools.front(), config.evaluation.fixed_bobs_fractions);
  const bool has_sp = std::any_of(methods.begin(), methods.end(),
                                  [](const auto& mc) { return mc.method == "SP"; });
  const auto report = loi::eval::FixedBobsEval(
      methods, bobs, games ? *games : config.evaluation.games_per_pair,
      config.MakeEnvironment(e, s),
      loi::DeriveSeed(config.seed, "evaluate",
                      {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(s)}),
      has_sp ? std::optional<std::string>("SP") : std::nullopt, g.jobs);
  const std::string& env = config.environments[e].name;
  const fs::path dir =
      output.empty() ? config.output_dir / "eval" / env / scenario : fs::path(output);
  ex::WriteCsv(dir / "raw.csv", ex::RawRewardTable(ex::EvaluationRows(report, env, scenario)));
  ex::WriteCsv(dir / "summary.csv", ex::EvaluationSummaryTable(report));
  ex::WriteTextFile(dir / "report.json", ex::EvaluationReportToJson(report, env, scenario));
  if (auto rel = InsideRoot(config.output_dir, dir)) {
    for (const char* f : {"raw.csv", "summary.csv", "report.json"}) {
      RecordArtifact(config.output_dir, "evaluation", *rel / f);
    }
  }
  std::cout << ex::EvaluationSummaryTable(report).ToString();
  return 0;
}

int CmdStats(const std::string& report_csv, const std::string& test,
             const std::string& method_a, const std::string& method_b,
             const std::string& output) {
  const auto rows = ex::ParseRawRewards(ex::ReadCsv(report_csv));
  ex::CsvTable table;
  if (test == "anova") {
    table = ex::AnovaTable(ex::AnovaByScenario(rows));
  } else if (test == "ttest") {
    table = ex::TTestTable(ex::TTestByEnvironment(rows, method_a, method_b));
  } else {
    throw loi::ConfigError("unknown test '" + test + "' (expected anova or ttest)");
  }
  if (table.rows.empty()) {
    throw loi::ValidationError("no rows in " + report_csv + " match the requested test");
  }
  if (!output.empty()) ex::WriteCsv(output, table);
  std::cout << table.ToString();
  return 0;
}

int CmdReport(const std::string& manifest, const std::string& output) {
  const fs::path out =
      output.empty() ? fs::path(manifest).parent_path() / "report" : fs::path(output);
  for (const auto& p : ex::WriteReport(manifest, out)) std::cout << p.string() << "\n";
  return 0;
}

int CmdRunAll(const GlobalFlags& g) {
  const auto config = LoadWithOverrides(g);
  const auto summary = ex::RunAll(config, g.jobs, &std::cerr);
  const fs::path manifest = config.output_dir / "manifest.json";
  ex::WriteReport(manifest, config.output_dir / "report");
  for (const auto& cell : summary.cells) {
    std::cout << cell.environment << "/" << cell.scenario << "\tLoI " << cell.loi.mean;
    for (const auto& m : cell.evaluation.methods) {
      std::cout << "\t" << m.method << " "
                << (m.normalized ? std::to_string(*m.normalized) : std::string("n/a"));
    }
    std::cout << "\n";
  }
  std::cout << "manifest: " << manifest.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level of Influence workbench"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "Experiment configuration (JSON)");
  app.add_option("--seed", g.seed, "Root seed, overrides the configuration");
  app.add_option("--out", g.out, "Output directory, overrides the configuration");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--scale", g.scale, "Budget scale factor, overrides the configuration");

  std::string env_name;
  std::string scenario;
  std::string output;

  auto* train = app.add_subcommand("train", "Train SP or PP checkpoint pools");
  std::string method = "sp";
  std::optional<std::int64_t> steps;
  train->add_option("--env", env_name, "Environment name (default: first)");
  train->add_option("--scenario", scenario, "Scenario name")->required();
  train->add_option("--method", method, "sp, pp3, pp5 or pp:<p>");
  train->add_option("--steps", steps, "Steps per population (default: eval budget)");

  auto* loi_cmd = app.add_subcommand("loi", "Estimate the Level of Influence");
  std::vector<std::string> alice_dirs;
  std::vector<std::string> bob_dirs;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> games;
  bool histograms = false;
  loi_cmd->add_option("--env", env_name, "Environment name (default: first)");
  loi_cmd->add_option("--scenario", scenario, "Scenario name")->required();
  loi_cmd->add_option("--alice", alice_dirs, "Alice pool or run directories")->required();
  loi_cmd->add_option("--bob", bob_dirs, "Bob pool or run directories")->required();
  loi_cmd->add_option("-m", m, "Alice checkpoints per policy");
  loi_cmd->add_option("-n", n, "Bob checkpoints per policy");
  loi_cmd->add_option("-g,--games", games, "Games per Alice-Bob pair");
  loi_cmd->add_flag("--histograms", histograms, "Include per-pair histograms");
  loi_cmd->add_option("--output", output, "Output JSON path");

  auto* allocate = app.add_subcommand("allocate", "LoI-guided budget allocation");
  std::vector<std::string> loi_files;
  std::optional<std::int64_t> base_unit;
  allocate->add_option("--loi", loi_files, "LoI JSON files, one per scenario")->required();
  allocate->add_option("--base-unit", base_unit, "Steps per SP training run");
  allocate->add_option("--output", output, "Output directory");

  auto* evaluate = app.add_subcommand("evaluate", "Fixed-Bobs evaluation");
  std::vector<std::string> candidates;
  std::string bobs_dir;
  evaluate->add_option("--env", env_name, "Environment name (default: first)");
  evaluate->add_option("--scenario", scenario, "Scenario name")->required();
  evaluate->add_option("--candidates", candidates, "METHOD=DIR, repeatable")->required();
  evaluate->add_option("--bobs", bobs_dir, "SP run providing the Fixed-Bobs")->required();
  evaluate->add_option("--games", games, "Games per candidate-bob pair");
  evaluate->add_option("--output", output, "Output directory");

  auto* stats_cmd = app.add_subcommand("stats", "ANOVA or one-tailed t-test");
  std::string report_csv;
  std::string test;
  std::string method_a = "heuristic";
  std::string method_b = "uniform";
  stats_cmd->add_option("--report", report_csv, "Raw reward CSV")->required();
  stats_cmd->add_option("--test", test, "anova or ttest")->required();
  stats_cmd->add_option("--a", method_a, "t-test method expected to be larger");
  stats_cmd->add_option("--b", method_b, "t-test comparison method");
  stats_cmd->add_option("--output", output, "Output CSV path");

  auto* report = app.add_subcommand("report", "Summary tables from a finished run");
  std::string manifest;
  report->add_option("--run", manifest, "Run manifest.json")->required();
  report->add_option("--output", output, "Output directory (default: <run>/report)");

  auto* run_all = app.add_subcommand("run-all", "Full pipeline from a configuration");

  // Global flags may follow the verb.
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(loi::ErrorCategory::kConfiguration);
  }

  try {
    if (*train) return CmdTrain(g, env_name, scenario, method, steps);
    if (*loi_cmd) {
      return CmdLoI(g, env_name, scenario, alice_dirs, bob_dirs, m, n, games, histograms,
                    output);
    }
    if (*allocate) return CmdAllocate(g, loi_files, base_unit, output);
    if (*evaluate) {
      return CmdEvaluate(g, env_name, scenario, candidates, bobs_dir, games, output);
    }
    if (*stats_cmd) return CmdStats(report_csv, test, method_a, method_b, output);
    if (*report) return CmdReport(manifest, output);
    if (*run_all) return CmdRunAll(g);
  } catch (const loi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
