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

#ifndef COUPLED_SOLVERS_H_
#define COUPLED_SOLVERS_H_

#include <cstdint>
#include <vector>

#include "coupled/combinatorics.h"
#include "coupled/objectives.h"

namespace coupled {

// maximize g(A) + max_B f(A, B)  s.t.  A in I1, B in I2,
// with f(A, B) = max_{a in A} s(a, B).
struct CoupledProblem {
  SetFunction g;
  InnerObjective inner;
  ConstraintFamily m1;  // over e_ground
  ConstraintFamily m2;  // over v_ground
  GroundSet e_ground;
  GroundSet v_ground;
  // Zero-based stage (time step) of every v_ground element. Sequence-mode
  // solvers walk the stages in ascending order; empty means a single stage.
  std::vector<int> v_stage;
};

struct SolverResult {
  ElementSet a_set;
  // Ascending in set mode; in sequence mode, the order of selection.
  ElementSet b_set;
  CoupledValue value;
  // Calls to g and to s(a, B); one f(A, B) costs |A| calls to s.
  int64_t evaluations = 0;
  double wall_time = 0.0;  // seconds
};

// Equality of everything except wall_time.
bool SameOutcome(const SolverResult& x, const SolverResult& y);

// How the inner greedy treats an infeasible argmax.
enum class InnerRule {
  // The element with the best value is picked among all unvisited ones and
  // then dropped for good if it breaks I2.
  kAsWritten,
  // Deviation: the argmax only ranges over elements that keep B in I2.
  kFeasibleOnly,
};

struct GreedySelection {
  ElementSet elements;
  int64_t evaluations = 0;
};

// Classic greedy for a single set function: add the feasible element with
// the largest positive marginal gain until none is left. Ties go to the
// lowest index.
GreedySelection GreedySingle(const SetFunction& objective,
                             const ConstraintFamily& constraint,
                             const GroundSet& ground);

// Nested greedy for the coupled problem. For every candidate allocation
// element an inner greedy builds a deployment; the candidate with the best
// g + f is kept. Stops when no candidate is feasible or none improves the
// current value.
SolverResult NestedGreedy(const CoupledProblem& problem,
                          EvalMode mode = EvalMode::kSet,
                          InnerRule rule = InnerRule::kAsWritten);

inline constexpr int kDefaultBruteForceBudgetLog2 = 24;

// Exact optimum by enumerating I1 and I2 (downward-closed DFS). Throws
// SizeError when 2^|E| * 2^|V| exceeds 2^budget_log2. Ties go to the
// lexicographically smallest (A, B).
SolverResult BruteForceOptimal(
    const CoupledProblem& problem, EvalMode mode = EvalMode::kSet,
    int budget_log2 = kDefaultBruteForceBudgetLog2);

// Solve the two problems one after the other: greedy on g alone, then the
// inner greedy for the chosen allocation.
SolverResult DecoupledHeuristic(const CoupledProblem& problem,
                                EvalMode mode = EvalMode::kSet,
                                InnerRule rule = InnerRule::kAsWritten);

// Uniformly random feasible additions until A and then B are maximal.
SolverResult RandomFeasible(const CoupledProblem& problem, uint64_t seed,
                            EvalMode mode = EvalMode::kSet);

enum class GKind { kModular, kSubmodular };
enum class SKind { kModularSet, kSubmodularSet, kSequenceSubmodular };

struct BoundSpec {
  int m1 = 1;
  int m2 = 1;
  GKind g_kind = GKind::kModular;
  SKind s_kind = SKind::kSubmodularSet;
};

// Worst-case greedy/optimal ratio guaranteed for the given problem class.
double TheoreticalBound(const BoundSpec& spec);

}  // namespace coupled

#endif  // COUPLED_SOLVERS_H_
