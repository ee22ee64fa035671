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


#include "loi/experiment/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_convert.h"
#include "loi/common/errors.h"
#include "loi/game/payoff.h"
#include "loi/game/scenario.h"

namespace loi::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Fails on any key of `j` outside `allowed`.
void CheckKeys(const json& j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      throw ConfigError("unknown key '" + key + "' in " + std::string(where) +
                        " (expected one of: " + list + ")");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<std::vector<double>> StandardPayoff(std::string_view name) {
  for (const auto& g : game::PayoffMatrix::StandardGames()) {
    if (g.name() == name) return g.RowMatrix();
  }
  throw ConfigError("environment '" + std::string(name) +
                    "' has no row_payoff and is not a standard game");
}

}  // namespace

std::int64_t ExperimentConfig::Scaled(double full_steps) const {
  return std::max<std::int64_t>(1, std::llround(full_steps * scale));
}

int ExperimentConfig::EnvironmentIndex(std::string_view name) const {
  std::string known;
  for (std::size_t i = 0; i < environments.size(); ++i) {
    if (environments[i].name == name) return static_cast<int>(i);
    known += (known.empty() ? "" : ", ") + environments[i].name;
  }
  throw ConfigError("unknown environment '" + std::string(name) +
                    "'; known environments: " + known);
}

int ExperimentConfig::ScenarioIndex(std::string_view name) const {
  std::string known;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (scenarios[i].name == name) return static_cast<int>(i);
    known += (known.empty() ? "" : ", ") + scenarios[i].name;
  }
  throw ConfigError("unknown scenario '" + std::string(name) +
                    "'; known scenarios: " + known);
}

game::Environment ExperimentConfig::MakeEnvironment(int environment,
                                                    int scenario) const {
  const EnvironmentSpec& e = environments.at(environment);
  game::PayoffMatrix payoff(e.name, e.row_payoff);
  game::ScenarioMap map = game::LoadScenarioFile(scenarios.at(scenario).map, payoff);
  map.name = scenarios.at(scenario).name;
  if (game.episode_length) map.episode_length = *game.episode_length;
  return game::Environment(std::move(map), std::move(payoff), game.rules);
}

train::TrainingConfig ExperimentConfig::MakeTrainingConfig(
    int environment, int scenario, std::int64_t total_steps, int population_size,
    std::uint64_t seed) const {
  train::TrainingConfig t;
  t.scenario_id = scenarios.at(scenario).name;
  t.environment_id = environments.at(environment).name;
  t.total_steps = total_steps;
  t.save_interval = std::max<std::int64_t>(1, total_steps / training.checkpoints_per_run);
  t.population_size = population_size;
  t.seed = seed;
  t.discount_factor = training.discount_factor;
  t.learner = training.learner;
  return t;
}

void ExperimentConfig::Validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("scale must be positive");
  if (environments.empty()) throw ConfigError("no environments configured");
  if (scenarios.empty()) throw ConfigError("no scenarios configured");
  std::set<std::string> names;
  for (const auto& e : environments) {
    if (e.name.empty()) throw ConfigError("environment without a name");
    if (!names.insert("env:" + e.name).second) {
      throw ConfigError("duplicate environment '" + e.name + "'");
    }
    try {
      game::PayoffMatrix check(e.name, e.row_payoff);
    } catch (const Error& err) {
      throw ConfigError("environment '" + e.name + "': " + err.what());
    }
  }
  for (const auto& s : scenarios) {
    if (s.name.empty()) throw ConfigError("scenario without a name");
    if (!names.insert("scn:" + s.name).second) {
      throw ConfigError("duplicate scenario '" + s.name + "'");
    }
    if (!fs::exists(s.map)) {
      throw ConfigError("map file for scenario '" + s.name +
                        "' not found: " + s.map.string());
    }
  }
  // Every map must parse against every payoff (resource types < k).
  for (std::size_t e = 0; e < environments.size(); ++e) {
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
      try {
        MakeEnvironment(static_cast<int>(e), static_cast<int>(s));
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& err) {
        throw ConfigError("scenario '" + scenarios[s].name + "' in environment '" +
                          environments[e].name + "': " + err.what());
      }
    }
  }
  if (game.episode_length && *game.episode_length < 1) {
    throw ConfigError("game.episode_length must be >= 1");
  }
  if (training.checkpoints_per_run < 1) {
    throw ConfigError("training.checkpoints_per_run must be >= 1");
  }
  if (LoIPolicySteps() < training.checkpoints_per_run) {
    throw ConfigError("scaled loi_policy_steps is below checkpoints_per_run");
  }
  loi.Validate();
  if (evaluation.games_per_pair < 1) throw ConfigError("games_per_pair must be >= 1");
  if (evaluation.sp_seeds < 1) throw ConfigError("sp_seeds must be >= 1");
  if (evaluation.methods.empty()) throw ConfigError("evaluation.methods is empty");
  bool has_sp = false;
  for (const auto& m : evaluation.methods) {
    if (m != "SP" && m != "PP3" && m != "PP5") {
      throw ConfigError("evaluation method '" + m + "' is not one of SP, PP3, PP5");
    }
    has_sp = has_sp || m == "SP";
  }
  if (!has_sp) throw ConfigError("evaluation.methods must include SP (the baseline)");
  if (allocation.enabled && scenarios.size() < 2) {
    throw ConfigError("allocation needs at least two scenarios");
  }
  if (variance.enabled) {
    if (variance.repeats < 2) throw ConfigError("variance_study.repeats must be >= 2");
    if (variance.b_values.empty()) throw ConfigError("variance_study.b_values is empty");
    for (const auto& p : variance.pairs) {
      EnvironmentIndex(p.environment);
      ScenarioIndex(p.scenario);
    }
  }
}

ExperimentConfig ParseConfig(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    CheckKeys(root, "config",
              {"scale", "seed", "output_dir", "environments", "scenarios", "game",
               "training", "loi", "evaluation", "allocation", "variance_study"});
    Read(root, "scale", c.scale);
    Read(root, "seed", c.seed);
    if (root.contains("output_dir")) {
      c.output_dir = root.at("output_dir").get<std::string>();
      if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
    }
    if (root.contains("environments")) {
      for (const auto& e : root.at("environments")) {
        CheckKeys(e, "environments[]", {"name", "row_payoff"});
        EnvironmentSpec spec;
        spec.name = e.at("name").get<std::string>();
        spec.row_payoff = e.contains("row_payoff")
                              ? e.at("row_payoff").get<std::vector<std::vector<double>>>()
                              : StandardPayoff(spec.name);
        c.environments.push_back(std::move(spec));
      }
    } else {
      for (const auto& g : game::PayoffMatrix::StandardGames()) {
        c.environments.push_back({g.name(), g.RowMatrix()});
      }
    }
    if (root.contains("scenarios")) {
      for (const auto& s : root.at("scenarios")) {
        CheckKeys(s, "scenarios[]", {"name", "map"});
        ScenarioSpec spec;
        spec.name = s.at("name").get<std::string>();
        spec.map = s.at("map").get<std::string>();
        if (spec.map.is_relative()) spec.map = base_dir / spec.map;
        spec.map = spec.map.lexically_normal();
        c.scenarios.push_back(std::move(spec));
      }
    }
    if (root.contains("game")) {
      const json& g = root.at("game");
      CheckKeys(g, "game",
                {"beam_range", "beam_cooldown", "regen_delay", "payoff_mode",
                 "episode_length"});
      Read(g, "beam_range", c.game.rules.beam_range);
      Read(g, "beam_cooldown", c.game.rules.beam_cooldown);
      Read(g, "regen_delay", c.game.rules.regen_delay);
      if (g.contains("payoff_mode")) {
        c.game.rules.payoff_mode =
            game::ParsePayoffMode(g.at("payoff_mode").get<std::string>());
      }
      if (g.contains("episode_length")) c.game.episode_length = g.at("episode_length").get<int>();
    }
    if (root.contains("training")) {
      const json& t = root.at("training");
      CheckKeys(t, "training",
                {"loi_policy_steps", "eval_policy_steps", "checkpoints_per_run",
                 "mutation_scale", "episodes_per_eval", "discount_factor"});
      Read(t, "loi_policy_steps", c.training.loi_policy_steps);
      Read(t, "eval_policy_steps", c.training.eval_policy_steps);
      Read(t, "checkpoints_per_run", c.training.checkpoints_per_run);
      Read(t, "mutation_scale", c.training.learner.mutation_scale);
      Read(t, "episodes_per_eval", c.training.learner.episodes_per_eval);
      Read(t, "discount_factor", c.training.discount_factor);
    }
    if (root.contains("loi")) {
      const json& l = root.at("loi");
      CheckKeys(l, "loi",
                {"a", "b", "m", "n", "g", "alice_stage", "bob_stage", "bin_width",
                 "origin", "pool_bobs_across_policies", "keep_histograms"});
      Read(l, "a", c.loi.a);
      Read(l, "b", c.loi.b);
      Read(l, "m", c.loi.m);
      Read(l, "n", c.loi.n);
      Read(l, "g", c.loi.g);
      if (l.contains("alice_stage")) {
        c.loi.alice_stage = policy::ParseStage(l.at("alice_stage").get<std::string>());
      }
      if (l.contains("bob_stage")) {
        c.loi.bob_stage = policy::ParseStage(l.at("bob_stage").get<std::string>());
      }
      Read(l, "bin_width", c.loi.bin_width);
      Read(l, "origin", c.loi.origin);
      Read(l, "pool_bobs_across_policies", c.loi.pool_bobs_across_policies);
      Read(l, "keep_histograms", c.loi.keep_histograms);
    }
    if (root.contains("evaluation")) {
      const json& e = root.at("evaluation");
      CheckKeys(e, "evaluation",
                {"fixed_bobs_steps", "fixed_bobs_fractions", "games_per_pair",
                 "sp_seeds", "methods"});
      Read(e, "fixed_bobs_steps", c.evaluation.fixed_bobs_steps);
      Read(e, "fixed_bobs_fractions", c.evaluation.fixed_bobs_fractions);
      Read(e, "games_per_pair", c.evaluation.games_per_pair);
      Read(e, "sp_seeds", c.evaluation.sp_seeds);
      Read(e, "methods", c.evaluation.methods);
    }
    if (root.contains("allocation")) {
      const json& a = root.at("allocation");
      CheckKeys(a, "allocation", {"enabled", "base_unit"});
      Read(a, "enabled", c.allocation.enabled);
      Read(a, "base_unit", c.allocation.base_unit);
    }
    if (root.contains("variance_study")) {
      const json& v = root.at("variance_study");
      CheckKeys(v, "variance_study", {"enabled", "b_values", "repeats", "pairs"});
      Read(v, "enabled", c.variance.enabled);
      Read(v, "b_values", c.variance.b_values);
      Read(v, "repeats", c.variance.repeats);
      if (v.contains("pairs")) {
        for (const auto& p : v.at("pairs")) {
          CheckKeys(p, "variance_study.pairs[]", {"environment", "scenario"});
          c.variance.pairs.push_back({p.at("environment").get<std::string>(),
                                      p.at("scenario").get<std::string>()});
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema error: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), fs::absolute(path).parent_path());
}

std::string ConfigEcho(const ExperimentConfig& c) {
  json envs = json::array();
  for (const auto& e : c.environments) {
    envs.push_back({{"name", e.name}, {"row_payoff", e.row_payoff}});
  }
  json scenarios = json::array();
  for (const auto& s : c.scenarios) {
    // The map content, not its location, determines results.
    std::ifstream in(s.map);
    std::stringstream text;
    text << in.rdbuf();
    scenarios.push_back({{"name", s.name}, {"map_text", text.str()}});
  }
  json pairs = json::array();
  for (const auto& p : c.variance.pairs) {
    pairs.push_back({{"environment", p.environment}, {"scenario", p.scenario}});
  }
  json game{{"beam_range", c.game.rules.beam_range},
            {"beam_cooldown", c.game.rules.beam_cooldown},
            {"regen_delay", c.game.rules.regen_delay},
            {"payoff_mode", game::PayoffModeName(c.game.rules.payoff_mode)}};
  if (c.game.episode_length) game["episode_length"] = *c.game.episode_length;
  const json echo{
      {"scale", c.scale},
      {"seed", c.seed},
      {"environments", envs},
      {"scenarios", scenarios},
      {"game", game},
      {"training",
       {{"loi_policy_steps", c.training.loi_policy_steps},
        {"eval_policy_steps", c.training.eval_policy_steps},
        {"checkpoints_per_run", c.training.checkpoints_per_run},
        {"mutation_scale", c.training.learner.mutation_scale},
        {"episodes_per_eval", c.training.learner.episodes_per_eval},
        {"discount_factor", c.training.discount_factor}}},
      {"loi",
       {{"a", c.loi.a},
        {"b", c.loi.b},
        {"m", c.loi.m},
        {"n", c.loi.n},
        {"g", c.loi.g},
        {"alice_stage", policy::StageName(c.loi.alice_stage)},
        {"bob_stage", policy::StageName(c.loi.bob_stage)},
        {"bin_width", c.loi.bin_width},
        {"origin", c.loi.origin},
        {"pool_bobs_across_policies", c.loi.pool_bobs_across_policies},
        {"keep_histograms", c.loi.keep_histograms}}},
      {"evaluation",
       {{"fixed_bobs_steps", c.evaluation.fixed_bobs_steps},
        {"fixed_bobs_fractions", c.evaluation.fixed_bobs_fractions},
        {"games_per_pair", c.evaluation.games_per_pair},
        {"sp_seeds", c.evaluation.sp_seeds},
        {"methods", c.evaluation.methods}}},
      {"allocation",
       {{"enabled", c.allocation.enabled}, {"base_unit", c.allocation.base_unit}}},
      {"variance_study",
       {{"enabled", c.variance.enabled},
        {"b_values", c.variance.b_values},
        {"repeats", c.variance.repeats},
        {"pairs", pairs}}}};
  return echo.dump(2);
}

}  // namespace loi::experiment
