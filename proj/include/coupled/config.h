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

#ifndef COUPLED_CONFIG_H_
#define COUPLED_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coupled/objectives.h"
#include "coupled/solvers.h"

namespace coupled {

enum class Method { kGreedy, kHeuristic, kRandom, kOptimal };

std::string_view MethodName(Method method);
// Throws ConfigError for an unknown name.
Method ParseMethod(std::string_view name);
std::vector<Method> ParseMethodList(std::string_view comma_separated);

std::string_view ModeName(EvalMode mode);
EvalMode ParseMode(std::string_view name);

enum class ExperimentKind {
  kCoupled,     // allocation + deployment, M2 = M23
  kDeployment,  // allocation fixed to one element with a random prior
};

// Which deployment constraints make up M2.
enum class DeploymentConstraints {
  kSelection,  // M23 only
  kAll,        // M21 ∩ M22 ∩ M23
};

// What the time_ratio column measures.
enum class TimeSource {
  kEvaluations,  // objective-call counts; deterministic
  kWallclock,    // seconds; varies run to run
};

struct IntRange {
  int min = 0;
  int max = 0;
};

// Settings of a Monte Carlo run. Sizes are drawn per trial, uniformly from
// each closed range.
struct ExperimentConfig {
  uint64_t seed = 1;
  int trials = 500;

  IntRange alloc_robots{2, 3};     // |R1|, within 2..6
  IntRange functionalities{2, 3};  // |D|, within 2..6
  IntRange requirements{2, 2};     // |E_req|, within 2..6
  IntRange state_dim{2, 5};        // p, within 2..5
  IntRange horizon{2, 3};          // K, within 2..5
  IntRange deploy_robots{2, 2};    // |R2|, within 2..4

  int robot_capacity = 1;
  // l_k and l; unset means |R2| and K. Values above those are clamped.
  std::optional<int> per_time_cap;
  std::optional<int> max_active_times;

  std::vector<Method> methods{Method::kGreedy, Method::kHeuristic,
                              Method::kRandom, Method::kOptimal};
  EvalMode mode = EvalMode::kSet;
  ExperimentKind experiment = ExperimentKind::kCoupled;
  DeploymentConstraints deployment_constraints =
      DeploymentConstraints::kSelection;
  double reward_weight = 1.0;
  int optimal_budget_log2 = kDefaultBruteForceBudgetLog2;
  TimeSource time_source = TimeSource::kEvaluations;
  InnerRule inner_rule = InnerRule::kAsWritten;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 1;

  bool Enabled(Method method) const;
};

// Throws ConfigError describing the first invalid field.
void ValidateConfig(const ExperimentConfig& config);

// Flat JSON object whose keys are listed in README.md. Missing keys keep
// their defaults; unknown keys are errors. Throws ConfigError.
ExperimentConfig ParseConfig(std::string_view text);
// Throws ConfigError naming the path when it cannot be read.
ExperimentConfig LoadConfig(const std::string& path);

}  // namespace coupled

#endif  // COUPLED_CONFIG_H_
