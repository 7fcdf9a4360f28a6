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

#include "cli.h"

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coupled/allocation.h"
#include "coupled/combinatorics.h"
#include "coupled/config.h"
#include "coupled/deployment.h"
#include "coupled/errors.h"
#include "coupled/harness.h"
#include "coupled/rng.h"
#include "coupled/solvers.h"
#include "json.hpp"

namespace coupled {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSampledAxiomChecks = 2000;

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_dir;
  std::string format;
  std::string mode;
  std::string methods;
};

void AddCommonOptions(CLI::App& command, CommonOptions& options) {
  command.add_option("--config", options.config_path,
                     "Experiment configuration file (JSON)");
  command.add_option("--seed", options.seed,
                     "Seed overriding the configuration");
  command.add_option("--out", options.out_dir,
                     "Directory receiving trials.csv and summary.json");
  command.add_option("--format", options.format, "Stdout format")
      ->check(CLI::IsMember({"csv", "json"}));
  command.add_option("--mode", options.mode, "Evaluation mode")
      ->check(CLI::IsMember({"set", "sequence"}));
  command.add_option("--methods", options.methods,
                     "Comma list from greedy,heuristic,random,optimal");
}

ExperimentConfig ResolveConfig(const CommonOptions& options) {
  ExperimentConfig config;
  if (!options.config_path.empty()) config = LoadConfig(options.config_path);
  if (options.seed) config.seed = *options.seed;
  if (!options.mode.empty()) config.mode = ParseMode(options.mode);
  if (!options.methods.empty()) {
    config.methods = ParseMethodList(options.methods);
  }
  ValidateConfig(config);
  return config;
}

Json Labels(const GroundSet& ground, const ElementSet& elements) {
  Json out = Json::array();
  for (int e : elements) out.push_back(ground.label(e));
  return out;
}

std::string JoinLabels(const GroundSet& ground, const ElementSet& elements) {
  std::string out;
  for (int e : elements) {
    if (!out.empty()) out += ' ';
    out += ground.label(e);
  }
  return out;
}

int RunSolve(const CommonOptions& options, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(options);
  const GeneratedInstance instance =
      GenerateInstance(TrialSeed(config.seed, 0), config);
  const CoupledProblem problem = BuildProblem(instance, config);
  const TrialRecord record = RunTrial(instance, config, 0);

  if (options.format == "csv") {
    out << "method,value,g_value,h_value,evaluations,allocation,deployment\n";
    for (Method method : config.methods) {
      const auto it = record.results.find(method);
      if (it == record.results.end()) continue;
      const SolverResult& r = it->second;
      out << MethodName(method) << ',' << FormatNumber(r.value.total) << ','
          << FormatNumber(r.value.g_value) << ','
          << FormatNumber(r.value.h_value) << ',' << r.evaluations << ",\""
          << JoinLabels(problem.e_ground, r.a_set) << "\",\""
          << JoinLabels(problem.v_ground, r.b_set) << "\"\n";
    }
    return kExitOk;
  }

  Json doc;
  doc["seed"] = config.seed;
  doc["mode"] = std::string(ModeName(config.mode));
  doc["s1"] = record.s1;
  doc["s2"] = record.s2;
  doc["theoretical_bound"] =
      RoundPrinted(TheoreticalBound(HarnessBoundSpec(problem, config)));
  doc["optimal_unavailable"] = record.optimal_unavailable;
  Json results = Json::object();
  for (Method method : config.methods) {
    const auto it = record.results.find(method);
    if (it == record.results.end()) continue;
    const SolverResult& r = it->second;
    results[std::string(MethodName(method))] = {
        {"allocation", Labels(problem.e_ground, r.a_set)},
        {"deployment", Labels(problem.v_ground, r.b_set)},
        {"value", RoundPrinted(r.value.total)},
        {"g_value", RoundPrinted(r.value.g_value)},
        {"h_value", RoundPrinted(r.value.h_value)},
        {"evaluations", r.evaluations},
        {"wall_time", RoundPrinted(r.wall_time)},
    };
  }
  doc["results"] = results;
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int RunExperimentCommand(const CommonOptions& options, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(options);
  const ExperimentOutput output = RunExperiment(config);
  if (!options.out_dir.empty()) WriteExperiment(output, options.out_dir);
  out << (options.format == "csv" ? output.csv : output.summary_json);
  return kExitOk;
}

struct AuditedFamily {
  ConstraintFamily family;
  const GroundSet* ground;
};

int RunCheckAxioms(const CommonOptions& options, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(options);
  const GeneratedInstance instance =
      GenerateInstance(TrialSeed(config.seed, 0), config);
  const AllocationGround e = BuildAllocationGroundSet(instance.allocation);
  const DeploymentGround v = BuildDeploymentGroundSet(instance.deployment);
  const std::vector<AuditedFamily> families = {
      {IndependenceConstraint(instance.allocation), &e.ground},
      {UniquenessConstraint(instance.allocation), &e.ground},
      {PerTimeCapacityConstraint(instance.deployment), &v.ground},
      {ActiveTimesConstraint(instance.deployment), &v.ground},
      {SelectionConstraint(instance.deployment), &v.ground},
  };

  const bool csv = options.format == "csv";
  Json reports = Json::array();
  if (csv) {
    out << "family,ground_size,exhaustive,sets_checked,empty_accepted,"
           "downward_closed,exchange_holds,matroid\n";
  }
  for (size_t i = 0; i < families.size(); ++i) {
    const ConstraintFamily& family = families[i].family;
    const GroundSet& ground = *families[i].ground;
    const AxiomReport report =
        ground.size() <= kDefaultAxiomCap
            ? VerifyAxioms(family, ground)
            : VerifyAxiomsSampled(family, ground, kSampledAxiomChecks,
                                  DeriveSeed(config.seed, 2 + i));
    if (csv) {
      out << family.name() << ',' << ground.size() << ','
          << (report.exhaustive ? "true" : "false") << ','
          << report.sets_checked << ','
          << (report.empty_accepted ? "true" : "false") << ','
          << (report.downward_closed ? "true" : "false") << ','
          << (report.exchange_holds ? "true" : "false") << ','
          << (report.IsMatroid() ? "true" : "false") << '\n';
      continue;
    }
    Json entry = {
        {"family", family.name()},
        {"ground_size", ground.size()},
        {"exhaustive", report.exhaustive},
        {"sets_checked", report.sets_checked},
        {"empty_accepted", report.empty_accepted},
        {"downward_closed", report.downward_closed},
        {"exchange_holds", report.exchange_holds},
        {"matroid", report.IsMatroid()},
    };
    if (report.closure_witness) {
      entry["closure_witness"] = {
          {"superset", Labels(ground, report.closure_witness->superset)},
          {"subset", Labels(ground, report.closure_witness->subset)},
      };
    }
    if (report.exchange_witness) {
      entry["exchange_witness"] = {
          {"larger", Labels(ground, report.exchange_witness->larger)},
          {"smaller", Labels(ground, report.exchange_witness->smaller)},
      };
    }
    reports.push_back(entry);
  }
  if (!csv) out << reports.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app("Coupled allocation and deployment optimization", "coupled_cli");
  app.require_subcommand(1);

  CommonOptions options;
  CLI::App* solve =
      app.add_subcommand("solve", "Solve one generated instance");
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run the Monte Carlo experiment");
  CLI::App* check = app.add_subcommand(
      "check-axioms", "Audit the constraint families of one instance");
  for (CLI::App* command : {solve, experiment, check}) {
    AddCommonOptions(*command, options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return RunSolve(options, out);
    if (experiment->parsed()) return RunExperimentCommand(options, out);
    return RunCheckAxioms(options, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace coupled
