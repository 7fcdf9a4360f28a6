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

#include "coupled/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "coupled/errors.h"
#include "coupled/rng.h"
#include "json.hpp"

namespace coupled {
namespace {

constexpr double kPriorRidge = 1e-3;

double Ratio(double value, double optimal) {
  if (optimal <= 0.0) return 1.0;
  const double ratio = value / optimal;
  if (ratio > 1.0 + 1e-9) {
    throw std::logic_error("solver value exceeds the brute-force optimum");
  }
  return std::min(ratio, 1.0);
}

}  // namespace

GeneratedInstance GenerateInstance(uint64_t seed,
                                   const ExperimentConfig& config) {
  ValidateConfig(config);
  Rng rng(seed);
  const bool coupled = config.experiment == ExperimentKind::kCoupled;
  auto draw = [&](const IntRange& r) { return rng.UniformInt(r.min, r.max); };

  const int num_alloc_robots = coupled ? draw(config.alloc_robots) : 1;
  const int num_functionalities = coupled ? draw(config.functionalities) : 1;
  const int num_requirements = coupled ? draw(config.requirements) : 1;
  const int p = draw(config.state_dim);
  const int horizon = draw(config.horizon);
  const int num_deploy_robots = draw(config.deploy_robots);

  GeneratedInstance out;
  AllocationInstance& alloc = out.allocation;
  for (int r = 0; r < num_alloc_robots; ++r) {
    alloc.robots.push_back(r);
    alloc.robot_capacity[r] = config.robot_capacity;
  }
  for (int d = 0; d < num_functionalities; ++d) {
    for (int e = 0; e < num_requirements; ++e) alloc.tasks.emplace_back(d, e);
  }
  for (int r = 0; r < num_alloc_robots; ++r) {
    for (const auto& [d, e] : alloc.tasks) {
      const AllocationElement a{r, d, e};
      alloc.admissible.push_back(a);
      alloc.rewards[a] = coupled ? rng.Uniform01() : 0.0;
    }
  }

  DeploymentInstance& deploy = out.deployment;
  deploy.horizon = horizon;
  for (int r = 0; r < num_deploy_robots; ++r) {
    SensorModel sensor;
    sensor.measurement.resize(1, p);
    for (int j = 0; j < p; ++j) sensor.measurement(0, j) = rng.Normal();
    sensor.noise_covariance = Eigen::MatrixXd::Identity(1, 1);
    deploy.robots.push_back(std::move(sensor));
  }
  for (int b = 0; b < num_deploy_robots * horizon; ++b) {
    deploy.deploy_rewards.push_back(rng.Uniform01());
  }
  const int per_time = std::min(
      config.per_time_cap.value_or(num_deploy_robots), num_deploy_robots);
  deploy.per_time_cap.assign(horizon, per_time);
  deploy.max_active_times =
      std::min(config.max_active_times.value_or(horizon), horizon);
  deploy.dynamics = Eigen::MatrixXd::Identity(p, p);
  deploy.reward_weight = config.reward_weight;
  for (size_t a = 0; a < alloc.admissible.size(); ++a) {
    Eigen::MatrixXd l(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) l(i, j) = rng.Normal();
    }
    Eigen::MatrixXd prior = l * l.transpose();
    prior += kPriorRidge * Eigen::MatrixXd::Identity(p, p);
    deploy.prior_info.push_back(0.5 * (prior + prior.transpose()));
  }
  return out;
}

CoupledProblem BuildProblem(const GeneratedInstance& instance,
                            const ExperimentConfig& config) {
  const AllocationGround e = BuildAllocationGroundSet(instance.allocation);
  const DeploymentGround v = BuildDeploymentGroundSet(instance.deployment);
  const DeploymentObjective objective(instance.deployment);
  const ModularReward utility = AllocationUtility(instance.allocation);

  ConstraintFamily m2 =
      config.deployment_constraints == DeploymentConstraints::kAll
          ? FullDeploymentConstraint(instance.deployment)
          : ConstraintFamily::MakeIntersection(
                {SelectionConstraint(instance.deployment)})
                .set_name("M2");
  return CoupledProblem{
      .g = [utility](std::span<const int> a) { return utility.Value(a); },
      .inner = InnerObjective(objective, e.ground.size(), config.mode),
      .m1 = AllocationConstraint(instance.allocation),
      .m2 = std::move(m2),
      .e_ground = e.ground,
      .v_ground = v.ground,
      .v_stage = v.stage_of,
  };
}

BoundSpec HarnessBoundSpec(const CoupledProblem& problem,
                           const ExperimentConfig& config) {
  return BoundSpec{
      .m1 = IntersectionCardinality(problem.m1),
      .m2 = IntersectionCardinality(problem.m2),
      .g_kind = GKind::kModular,
      .s_kind = config.mode == EvalMode::kSet ? SKind::kSubmodularSet
                                              : SKind::kSequenceSubmodular,
  };
}

uint64_t TrialSeed(uint64_t experiment_seed, int trial_index) {
  return DeriveSeed(experiment_seed, static_cast<uint64_t>(trial_index));
}

TrialRecord RunTrial(const GeneratedInstance& instance,
                     const ExperimentConfig& config, int trial_index) {
  const CoupledProblem problem = BuildProblem(instance, config);
  TrialRecord record;
  record.trial_index = trial_index;
  record.s1 = problem.e_ground.size();
  record.s2 = problem.v_ground.size();
  record.size_product = static_cast<int64_t>(record.s1) * record.s2;

  const uint64_t seed = TrialSeed(config.seed, trial_index);
  for (Method method : config.methods) {
    switch (method) {
      case Method::kGreedy:
        record.results[method] =
            NestedGreedy(problem, config.mode, config.inner_rule);
        record.value_greedy = record.results[method].value.total;
        break;
      case Method::kHeuristic:
        record.results[method] =
            DecoupledHeuristic(problem, config.mode, config.inner_rule);
        record.value_heur = record.results[method].value.total;
        break;
      case Method::kRandom:
        record.results[method] =
            RandomFeasible(problem, DeriveSeed(seed, 1), config.mode);
        record.value_rand = record.results[method].value.total;
        break;
      case Method::kOptimal:
        try {
          record.results[method] = BruteForceOptimal(
              problem, config.mode, config.optimal_budget_log2);
          record.value_opt = record.results[method].value.total;
        } catch (const SizeError&) {
          record.optimal_unavailable = true;
        }
        break;
    }
  }

  if (record.value_opt) {
    const double opt = *record.value_opt;
    if (record.value_greedy) record.ratio_greedy = Ratio(*record.value_greedy, opt);
    if (record.value_heur) record.ratio_heur = Ratio(*record.value_heur, opt);
    if (record.value_rand) record.ratio_rand = Ratio(*record.value_rand, opt);
    if (record.value_greedy) {
      const SolverResult& greedy = record.results.at(Method::kGreedy);
      const SolverResult& optimal = record.results.at(Method::kOptimal);
      if (config.time_source == TimeSource::kEvaluations) {
        record.time_ratio = static_cast<double>(greedy.evaluations) /
                            static_cast<double>(optimal.evaluations);
      } else if (optimal.wall_time > 0.0) {
        record.time_ratio = greedy.wall_time / optimal.wall_time;
      }
    }
  }
  return record;
}

std::string FormatNumber(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 9);
  if (ec != std::errc()) throw std::logic_error("number formatting failed");
  return std::string(buffer, end);
}

double RoundPrinted(double value) {
  const std::string text = FormatNumber(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

SummaryStats Summarize(const std::vector<TrialRecord>& records,
                       double theoretical_bound) {
  SummaryStats summary;
  summary.trials = static_cast<int>(records.size());
  summary.theoretical_bound = theoretical_bound;

  std::map<std::string, std::vector<double>> ratios;
  std::map<int64_t, std::vector<double>> time_ratios;
  for (const TrialRecord& r : records) {
    if (r.value_opt) ++summary.trials_with_optimal;
    if (r.ratio_greedy) {
      const double x = RoundPrinted(*r.ratio_greedy);
      ratios["greedy"].push_back(x);
      if (x < theoretical_bound) ++summary.greedy_bound_violations;
    }
    if (r.ratio_heur) ratios["heuristic"].push_back(RoundPrinted(*r.ratio_heur));
    if (r.ratio_rand) ratios["random"].push_back(RoundPrinted(*r.ratio_rand));
    if (r.time_ratio) {
      time_ratios[r.size_product].push_back(RoundPrinted(*r.time_ratio));
    }
  }
  for (const auto& [name, xs] : ratios) {
    MethodStats stats;
    stats.count = static_cast<int>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    stats.mean = sum / stats.count;
    double squares = 0.0;
    for (double x : xs) squares += (x - stats.mean) * (x - stats.mean);
    stats.variance = squares / stats.count;
    stats.min = *std::min_element(xs.begin(), xs.end());
    stats.max = *std::max_element(xs.begin(), xs.end());
    summary.methods[name] = stats;
  }
  for (const auto& [size, xs] : time_ratios) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    summary.time_ratio_by_size.push_back(
        {size, static_cast<int>(xs.size()), sum / static_cast<double>(xs.size())});
  }
  return summary;
}

std::string CsvRow(const TrialRecord& r) {
  std::string row = std::to_string(r.trial_index) + "," + std::to_string(r.s1) +
                    "," + std::to_string(r.s2) + "," +
                    std::to_string(r.size_product);
  for (const std::optional<double>& field :
       {r.value_opt, r.value_greedy, r.value_heur, r.value_rand,
        r.ratio_greedy, r.ratio_heur, r.ratio_rand, r.time_ratio}) {
    row += ",";
    if (field) row += FormatNumber(*field);
  }
  return row;
}

std::string RenderCsv(const std::vector<TrialRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const TrialRecord& r : records) {
    out += CsvRow(r);
    out += '\n';
  }
  return out;
}

std::string RenderSummaryJson(const SummaryStats& summary,
                              const ExperimentConfig& config) {
  nlohmann::ordered_json doc;
  doc["experiment"] =
      config.experiment == ExperimentKind::kCoupled ? "coupled" : "deployment";
  doc["mode"] = std::string(ModeName(config.mode));
  doc["seed"] = config.seed;
  doc["trials"] = summary.trials;
  doc["trials_with_optimal"] = summary.trials_with_optimal;
  doc["theoretical_bound"] = RoundPrinted(summary.theoretical_bound);
  doc["greedy_bound_violations"] = summary.greedy_bound_violations;
  nlohmann::ordered_json methods = nlohmann::ordered_json::object();
  for (const char* name : {"greedy", "heuristic", "random"}) {
    const auto it = summary.methods.find(name);
    if (it == summary.methods.end()) continue;
    const MethodStats& s = it->second;
    methods[name] = {
        {"count", s.count},
        {"mean_ratio", RoundPrinted(s.mean)},
        {"variance_ratio", RoundPrinted(s.variance)},
        {"min_ratio", RoundPrinted(s.min)},
        {"max_ratio", RoundPrinted(s.max)},
    };
  }
  doc["methods"] = methods;
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (const SizeTimeRatio& s : summary.time_ratio_by_size) {
    sizes.push_back({{"size", s.size},
                     {"count", s.count},
                     {"mean_time_ratio", RoundPrinted(s.mean)}});
  }
  doc["time_ratio_by_size"] = sizes;
  return doc.dump(2) + "\n";
}

ExperimentOutput RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  ExperimentOutput out;
  out.records.resize(config.trials);

  std::optional<double> bound;
  std::mutex bound_mutex;
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        const GeneratedInstance instance =
            GenerateInstance(TrialSeed(config.seed, i), config);
        out.records[i] = RunTrial(instance, config, i);
        std::lock_guard<std::mutex> lock(bound_mutex);
        if (!bound) {
          bound = TheoreticalBound(
              HarnessBoundSpec(BuildProblem(instance, config), config));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.trials);
        return;
      }
    }
  };

  int threads = config.threads;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, config.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.summary = Summarize(out.records, bound.value_or(0.0));
  out.csv = RenderCsv(out.records);
  out.summary_json = RenderSummaryJson(out.summary, config);
  return out;
}

void WriteExperiment(const ExperimentOutput& output,
                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  }
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    file << text;
    file.close();
    if (!file) throw IoError("cannot write '" + path.string() + "'");
  };
  write(dir / kTrialsFile, output.csv);
  write(dir / kSummaryFile, output.summary_json);
}

}  // namespace coupled
