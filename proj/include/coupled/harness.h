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

#ifndef COUPLED_HARNESS_H_
#define COUPLED_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coupled/allocation.h"
#include "coupled/config.h"
#include "coupled/deployment.h"
#include "coupled/solvers.h"

namespace coupled {

struct GeneratedInstance {
  AllocationInstance allocation;
  DeploymentInstance deployment;
};

// Draws one random instance. With Rng(seed), draws happen in this order:
//   1. sizes |R1|, |D|, |E_req|, p, K, |R2| (UniformInt over each range;
//      the allocation sizes are fixed to 1 and not drawn in deployment mode)
//   2. u_a ~ U[0,1) per triplet, triplets in (robot, functionality,
//      requirement) order (all 0 and not drawn in deployment mode)
//   3. sensor row C_r, p standard normals, per deployment robot
//   4. u_b ~ U[0,1) per (robot, time), time-major
//   5. per triplet, L with p*p standard normals row-major; J_1 = L L' + 1e-3 I
// Noise covariances are 1x1 identities and the dynamics are I_p.
GeneratedInstance GenerateInstance(uint64_t seed,
                                   const ExperimentConfig& config);

// Assembled solver input for a generated instance: M1 = M11 ∩ M12 and M2
// per config.deployment_constraints.
CoupledProblem BuildProblem(const GeneratedInstance& instance,
                            const ExperimentConfig& config);

// Bound for the problem class run by the harness.
BoundSpec HarnessBoundSpec(const CoupledProblem& problem,
                           const ExperimentConfig& config);

struct TrialRecord {
  int trial_index = 0;
  int s1 = 0;
  int s2 = 0;
  int64_t size_product = 0;
  std::optional<double> value_opt;
  std::optional<double> value_greedy;
  std::optional<double> value_heur;
  std::optional<double> value_rand;
  std::optional<double> ratio_greedy;
  std::optional<double> ratio_heur;
  std::optional<double> ratio_rand;
  std::optional<double> time_ratio;
  // Set when the brute-force budget was exceeded.
  bool optimal_unavailable = false;
  std::map<Method, SolverResult> results;
};

// Seed of trial `trial_index`; the random method draws from
// DeriveSeed(TrialSeed(...), 1).
uint64_t TrialSeed(uint64_t experiment_seed, int trial_index);

TrialRecord RunTrial(const GeneratedInstance& instance,
                     const ExperimentConfig& config, int trial_index);

struct MethodStats {
  int count = 0;
  double mean = 0.0;
  double variance = 0.0;  // population variance
  double min = 0.0;
  double max = 0.0;
};

struct SizeTimeRatio {
  int64_t size = 0;
  int count = 0;
  double mean = 0.0;
};

// Statistics over the ratios as printed in the trial CSV, so they can be
// recomputed bit-for-bit from the CSV alone.
struct SummaryStats {
  int trials = 0;
  int trials_with_optimal = 0;
  double theoretical_bound = 0.0;
  int greedy_bound_violations = 0;
  std::map<std::string, MethodStats> methods;  // greedy, heuristic, random
  std::vector<SizeTimeRatio> time_ratio_by_size;
};

SummaryStats Summarize(const std::vector<TrialRecord>& records,
                       double theoretical_bound);

// 9 significant digits, '.' separator, locale independent.
std::string FormatNumber(double value);
// value rounded through FormatNumber.
double RoundPrinted(double value);

inline constexpr const char* kCsvHeader =
    "trial_index,s1,s2,size_product,value_opt,value_greedy,value_heur,"
    "value_rand,ratio_greedy,ratio_heur,ratio_rand,time_ratio";

std::string CsvRow(const TrialRecord& record);
std::string RenderCsv(const std::vector<TrialRecord>& records);
std::string RenderSummaryJson(const SummaryStats& summary,
                              const ExperimentConfig& config);

struct ExperimentOutput {
  std::vector<TrialRecord> records;
  SummaryStats summary;
  std::string csv;
  std::string summary_json;
};

// Runs config.trials trials, possibly on several threads; records are kept
// in trial order so the rendered output does not depend on scheduling.
ExperimentOutput RunExperiment(const ExperimentConfig& config);

inline constexpr const char* kTrialsFile = "trials.csv";
inline constexpr const char* kSummaryFile = "summary.json";

// Writes trials.csv and summary.json under `dir`, creating it if needed.
// Throws IoError.
void WriteExperiment(const ExperimentOutput& output,
                     const std::filesystem::path& dir);

}  // namespace coupled

#endif  // COUPLED_HARNESS_H_
