// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coupled/config.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "coupled/errors.h"
#include "json.hpp"

namespace coupled {
namespace {

using nlohmann::json;

void CheckRange(const char* name, const IntRange& range, int lo, int hi) {
  if (range.min > range.max || range.min < lo || range.max > hi) {
    throw ConfigError(std::string(name) + " range [" +
                      std::to_string(range.min) + ", " +
                      std::to_string(range.max) + "] must lie within [" +
                      std::to_string(lo) + ", " + std::to_string(hi) +
                      "] with min <= max");
  }
}

int GetInt(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  const int64_t v = value.get<int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) {
    throw ConfigError("config key '" + key + "' out of range");
  }
  return static_cast<int>(v);
}

std::string GetString(const json& value, const std::string& key) {
  if (!value.is_string()) {
    throw ConfigError("config key '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kGreedy:
      return "greedy";
    case Method::kHeuristic:
      return "heuristic";
    case Method::kRandom:
      return "random";
    case Method::kOptimal:
      return "optimal";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kGreedy, Method::kHeuristic, Method::kRandom,
                   Method::kOptimal}) {
    if (MethodName(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected greedy, heuristic, random or optimal)");
}

std::vector<Method> ParseMethodList(std::string_view comma_separated) {
  std::vector<Method> out;
  size_t start = 0;
  while (start <= comma_separated.size()) {
    size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) end = comma_separated.size();
    const std::string item =
        Trim(comma_separated.substr(start, end - start));
    if (item.empty()) throw ConfigError("empty entry in method list");
    const Method m = ParseMethod(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    start = end + 1;
  }
  return out;
}

std::string_view ModeName(EvalMode mode) {
  return mode == EvalMode::kSet ? "set" : "sequence";
}

EvalMode ParseMode(std::string_view name) {
  if (name == "set") return EvalMode::kSet;
  if (name == "sequence") return EvalMode::kSequence;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected set or sequence)");
}

bool ExperimentConfig::Enabled(Method method) const {
  return std::find(methods.begin(), methods.end(), method) != methods.end();
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  CheckRange("alloc_robots", config.alloc_robots, 2, 6);
  CheckRange("functionalities", config.functionalities, 2, 6);
  CheckRange("requirements", config.requirements, 2, 6);
  CheckRange("state_dim", config.state_dim, 2, 5);
  CheckRange("horizon", config.horizon, 2, 5);
  CheckRange("deploy_robots", config.deploy_robots, 2, 4);
  if (config.robot_capacity < 1) {
    throw ConfigError("robot_capacity must be >= 1");
  }
  if (config.per_time_cap && *config.per_time_cap < 0) {
    throw ConfigError("per_time_cap must be >= 0");
  }
  if (config.max_active_times && *config.max_active_times < 0) {
    throw ConfigError("max_active_times must be >= 0");
  }
  if (config.methods.empty()) throw ConfigError("no methods selected");
  if (!(config.reward_weight >= 0.0) || !std::isfinite(config.reward_weight)) {
    throw ConfigError("reward_weight must be finite and >= 0");
  }
  if (config.optimal_budget_log2 < 1 || config.optimal_budget_log2 > 40) {
    throw ConfigError("optimal_budget_log2 must lie within [1, 40]");
  }
  if (config.threads < 0) throw ConfigError("threads must be >= 0");
}

ExperimentConfig ParseConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig config;
  const std::pair<const char*, IntRange*> ranges[] = {
      {"alloc_robots", &config.alloc_robots},
      {"functionalities", &config.functionalities},
      {"requirements", &config.requirements},
      {"state_dim", &config.state_dim},
      {"horizon", &config.horizon},
      {"deploy_robots", &config.deploy_robots},
  };

  for (const auto& [key, value] : doc.items()) {
    bool matched = false;
    for (const auto& [name, range] : ranges) {
      if (key == std::string(name) + "_min") {
        range->min = GetInt(value, key);
        matched = true;
      } else if (key == std::string(name) + "_max") {
        range->max = GetInt(value, key);
        matched = true;
      }
    }
    if (matched) continue;

    if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ConfigError("config key 'seed' must be a non-negative integer");
      }
      config.seed = value.get<uint64_t>();
    } else if (key == "trials") {
      config.trials = GetInt(value, key);
    } else if (key == "robot_capacity") {
      config.robot_capacity = GetInt(value, key);
    } else if (key == "per_time_cap") {
      config.per_time_cap = GetInt(value, key);
    } else if (key == "max_active_times") {
      config.max_active_times = GetInt(value, key);
    } else if (key == "methods") {
      if (value.is_string()) {
        config.methods = ParseMethodList(value.get<std::string>());
      } else if (value.is_array()) {
        config.methods.clear();
        for (const json& item : value) {
          const Method m = ParseMethod(GetString(item, key));
          if (!config.Enabled(m)) config.methods.push_back(m);
        }
      } else {
        throw ConfigError("config key 'methods' must be a list or string");
      }
    } else if (key == "mode") {
      config.mode = ParseMode(GetString(value, key));
    } else if (key == "experiment") {
      const std::string kind = GetString(value, key);
      if (kind == "coupled") {
        config.experiment = ExperimentKind::kCoupled;
      } else if (kind == "deployment") {
        config.experiment = ExperimentKind::kDeployment;
      } else {
        throw ConfigError("experiment must be 'coupled' or 'deployment'");
      }
    } else if (key == "deployment_constraints") {
      const std::string which = GetString(value, key);
      if (which == "selection") {
        config.deployment_constraints = DeploymentConstraints::kSelection;
      } else if (which == "all") {
        config.deployment_constraints = DeploymentConstraints::kAll;
      } else {
        throw ConfigError("deployment_constraints must be 'selection' or 'all'");
      }
    } else if (key == "reward_weight") {
      if (!value.is_number()) {
        throw ConfigError("config key 'reward_weight' must be a number");
      }
      config.reward_weight = value.get<double>();
    } else if (key == "optimal_budget_log2") {
      config.optimal_budget_log2 = GetInt(value, key);
    } else if (key == "time_source") {
      const std::string source = GetString(value, key);
      if (source == "evaluations") {
        config.time_source = TimeSource::kEvaluations;
      } else if (source == "wallclock") {
        config.time_source = TimeSource::kWallclock;
      } else {
        throw ConfigError("time_source must be 'evaluations' or 'wallclock'");
      }
    } else if (key == "inner_rule") {
      const std::string rule = GetString(value, key);
      if (rule == "as_written") {
        config.inner_rule = InnerRule::kAsWritten;
      } else if (rule == "feasible_only") {
        config.inner_rule = InnerRule::kFeasibleOnly;
      } else {
        throw ConfigError("inner_rule must be 'as_written' or 'feasible_only'");
      }
    } else if (key == "threads") {
      config.threads = GetInt(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseConfig(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace coupled
