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

#include "coupled/solvers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "coupled/errors.h"
#include "coupled/rng.h"

namespace coupled {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Counts every call to g and s made through it.
class Evaluator {
 public:
  explicit Evaluator(const CoupledProblem& problem) : problem_(problem) {}

  double G(std::span<const int> a_set) {
    ++calls_;
    return problem_.g(a_set);
  }

  double F(std::span<const int> a_set, std::span<const int> b) {
    calls_ += static_cast<int64_t>(a_set.size());
    return InnerValue(problem_.inner, a_set, b);
  }

  double S(int a, std::span<const int> b) {
    ++calls_;
    return problem_.inner.Pair(a, b);
  }

  int64_t calls() const { return calls_; }

 private:
  const CoupledProblem& problem_;
  int64_t calls_ = 0;
};

void CheckProblem(const CoupledProblem& problem) {
  if (problem.m1.ground_size() != problem.e_ground.size() ||
      problem.m2.ground_size() != problem.v_ground.size()) {
    throw InputError("constraint and ground set sizes disagree");
  }
  if (problem.inner.allocation_size() != problem.e_ground.size()) {
    throw InputError("inner objective and allocation ground set disagree");
  }
  if (!problem.v_stage.empty() &&
      static_cast<int>(problem.v_stage.size()) != problem.v_ground.size()) {
    throw InputError("v_stage must give one stage per deployment element");
  }
}

int StageOf(const CoupledProblem& problem, int b) {
  return problem.v_stage.empty() ? 0 : problem.v_stage[b];
}

ElementSet WithElement(std::span<const int> s, int e) {
  ElementSet out(s.begin(), s.end());
  out.insert(std::upper_bound(out.begin(), out.end(), e), e);
  return out;
}

// Ascending in set mode; stage-major in sequence mode.
void Canonicalize(const CoupledProblem& problem, EvalMode mode,
                  ElementSet& b) {
  if (mode == EvalMode::kSet) {
    std::sort(b.begin(), b.end());
  } else {
    std::sort(b.begin(), b.end(), [&](int x, int y) {
      return std::pair(StageOf(problem, x), x) <
             std::pair(StageOf(problem, y), y);
    });
  }
}

// Inner loop of the nested greedy: builds B for a fixed allocation.
ElementSet InnerGreedy(const CoupledProblem& problem, Evaluator& eval,
                       std::span<const int> a_set, EvalMode mode,
                       InnerRule rule) {
  const int n = problem.v_ground.size();
  ElementSet b;
  std::vector<char> visited(n, 0);

  // One pass over `pool`, |pool| picks. In set mode the pool is all of V.
  auto run = [&](const std::vector<int>& pool) {
    for (size_t step = 0; step < pool.size(); ++step) {
      int best = -1;
      double best_value = -std::numeric_limits<double>::infinity();
      for (int candidate : pool) {
        if (visited[candidate]) continue;
        if (rule == InnerRule::kFeasibleOnly &&
            !CanExtend(problem.m2, b, candidate)) {
          continue;
        }
        ElementSet trial;
        if (mode == EvalMode::kSet) {
          trial = WithElement(b, candidate);
        } else {
          trial = b;
          trial.push_back(candidate);
        }
        const double value = eval.F(a_set, trial);
        if (best < 0 || value > best_value) {
          best = candidate;
          best_value = value;
        }
      }
      if (best < 0) return;
      if (CanExtend(problem.m2, b, best)) {
        if (mode == EvalMode::kSet) {
          b = WithElement(b, best);
        } else {
          b.push_back(best);
        }
      }
      visited[best] = 1;
    }
  };

  if (mode == EvalMode::kSet) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    run(all);
  } else {
    int stages = 0;
    for (int i = 0; i < n; ++i) stages = std::max(stages, StageOf(problem, i) + 1);
    for (int k = 0; k < stages; ++k) {
      std::vector<int> pool;
      for (int i = 0; i < n; ++i) {
        if (StageOf(problem, i) == k) pool.push_back(i);
      }
      run(pool);
    }
  }
  return b;
}

// Recomputes the objective of a finished result and checks feasibility.
void Finalize(const CoupledProblem& problem, SolverResult& result,
              double incremental_total) {
  if (!IsIndependent(problem.m1, result.a_set) ||
      !IsIndependent(problem.m2, result.b_set)) {
    throw std::logic_error("solver returned an infeasible selection");
  }
  result.value =
      EvaluateCoupled(problem.g, problem.inner, result.a_set, result.b_set);
  const double scale = std::max(1.0, std::abs(incremental_total));
  if (std::abs(result.value.total - incremental_total) > 1e-9 * scale) {
    throw std::logic_error("recomputed objective disagrees with solver");
  }
}

}  // namespace

bool SameOutcome(const SolverResult& x, const SolverResult& y) {
  return x.a_set == y.a_set && x.b_set == y.b_set &&
         x.value.g_value == y.value.g_value &&
         x.value.h_value == y.value.h_value &&
         x.value.total == y.value.total && x.evaluations == y.evaluations;
}

GreedySelection GreedySingle(const SetFunction& objective,
                             const ConstraintFamily& constraint,
                             const GroundSet& ground) {
  if (constraint.ground_size() != ground.size()) {
    throw InputError("constraint and ground set sizes disagree");
  }
  GreedySelection out;
  double current = objective(out.elements);
  ++out.evaluations;
  while (true) {
    int best = -1;
    double best_gain = 0.0;
    double best_value = 0.0;
    for (int e = 0; e < ground.size(); ++e) {
      if (std::binary_search(out.elements.begin(), out.elements.end(), e)) {
        continue;
      }
      if (!CanExtend(constraint, out.elements, e)) continue;
      const double value = objective(WithElement(out.elements, e));
      ++out.evaluations;
      const double gain = value - current;
      if (gain > best_gain) {
        best = e;
        best_gain = gain;
        best_value = value;
      }
    }
    if (best < 0) break;
    out.elements = WithElement(out.elements, best);
    current = best_value;
  }
  return out;
}

SolverResult NestedGreedy(const CoupledProblem& problem, EvalMode mode,
                          InnerRule rule) {
  CheckProblem(problem);
  const auto start = Clock::now();
  Evaluator eval(problem);
  const int num_e = problem.e_ground.size();

  ElementSet a;
  ElementSet b_greedy;
  double current = eval.G(a);
  for (int step = 0; step < num_e; ++step) {
    int best = -1;
    double best_score = 0.0;
    ElementSet best_b;
    for (int candidate = 0; candidate < num_e; ++candidate) {
      if (std::binary_search(a.begin(), a.end(), candidate)) continue;
      if (!CanExtend(problem.m1, a, candidate)) continue;
      const ElementSet extended = WithElement(a, candidate);
      ElementSet b = InnerGreedy(problem, eval, extended, mode, rule);
      const double score = eval.G(extended) + eval.F(extended, b);
      if (best < 0 || score > best_score) {
        best = candidate;
        best_score = score;
        best_b = std::move(b);
      }
    }
    if (best < 0) break;                // no feasible candidate
    if (!(best_score > current)) break;  // no candidate improves
    a = WithElement(a, best);
    b_greedy = std::move(best_b);
    current = best_score;
  }

  SolverResult result;
  result.a_set = std::move(a);
  result.b_set = std::move(b_greedy);
  result.evaluations = eval.calls();
  Finalize(problem, result, current);
  result.wall_time = SecondsSince(start);
  return result;
}

SolverResult BruteForceOptimal(const CoupledProblem& problem, EvalMode mode,
                               int budget_log2) {
  CheckProblem(problem);
  const int num_e = problem.e_ground.size();
  const int num_v = problem.v_ground.size();
  if (num_e + num_v > budget_log2) {
    throw SizeError("brute force over |E| = " + std::to_string(num_e) +
                    " and |V| = " + std::to_string(num_v) + " needs 2^" +
                    std::to_string(num_e + num_v) + " > 2^" +
                    std::to_string(budget_log2) + " subset pairs");
  }
  const auto start = Clock::now();
  Evaluator eval(problem);

  // max_B max_{a in A} s(a, B) = max_{a in A} max_B s(a, B), so the best
  // deployment is found once per allocation element. The DFS visits B in
  // lexicographic order and keeps the first maximizer.
  std::vector<double> best_value(num_e,
                                 -std::numeric_limits<double>::infinity());
  std::vector<ElementSet> best_b(num_e);
  ForEachIndependentSet(problem.m2, [&](std::span<const int> b) {
    ElementSet ordered(b.begin(), b.end());
    Canonicalize(problem, mode, ordered);
    for (int e = 0; e < num_e; ++e) {
      const double value = eval.S(e, ordered);
      if (value > best_value[e]) {
        best_value[e] = value;
        best_b[e] = ordered;
      }
    }
  });

  SolverResult result;
  double best_total = -std::numeric_limits<double>::infinity();
  ForEachIndependentSet(problem.m1, [&](std::span<const int> a) {
    double h = 0.0;
    const ElementSet* b = nullptr;
    for (int e : a) {
      if (b == nullptr || best_value[e] > h) {
        h = best_value[e];
        b = &best_b[e];
      } else if (best_value[e] == h) {
        // Among equally good elements keep the lexicographically smallest B.
        ElementSet lhs = best_b[e], rhs = *b;
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs < rhs) b = &best_b[e];
      }
    }
    const double total = eval.G(a) + h;
    if (total > best_total) {
      best_total = total;
      result.a_set.assign(a.begin(), a.end());
      result.b_set = b == nullptr ? ElementSet{} : *b;
    }
  });

  result.evaluations = eval.calls();
  Finalize(problem, result, best_total);
  result.wall_time = SecondsSince(start);
  return result;
}

SolverResult DecoupledHeuristic(const CoupledProblem& problem, EvalMode mode,
                                InnerRule rule) {
  CheckProblem(problem);
  const auto start = Clock::now();
  Evaluator eval(problem);
  const GreedySelection allocation =
      GreedySingle(problem.g, problem.m1, problem.e_ground);

  SolverResult result;
  result.a_set = allocation.elements;
  result.b_set = InnerGreedy(problem, eval, result.a_set, mode, rule);
  const double total =
      eval.G(result.a_set) + eval.F(result.a_set, result.b_set);
  result.evaluations = allocation.evaluations + eval.calls();
  Finalize(problem, result, total);
  result.wall_time = SecondsSince(start);
  return result;
}

SolverResult RandomFeasible(const CoupledProblem& problem, uint64_t seed,
                            EvalMode mode) {
  CheckProblem(problem);
  const auto start = Clock::now();
  Rng rng(seed);

  auto grow = [&](const ConstraintFamily& constraint) {
    ElementSet picked;
    while (true) {
      std::vector<int> options;
      for (int e = 0; e < constraint.ground_size(); ++e) {
        if (std::binary_search(picked.begin(), picked.end(), e)) continue;
        if (CanExtend(constraint, picked, e)) options.push_back(e);
      }
      if (options.empty()) return picked;
      const int chosen =
          options[rng.UniformInt(0, static_cast<int>(options.size()) - 1)];
      picked = WithElement(picked, chosen);
    }
  };

  SolverResult result;
  result.a_set = grow(problem.m1);
  result.b_set = grow(problem.m2);
  Canonicalize(problem, mode, result.b_set);
  Evaluator eval(problem);
  const double total =
      eval.G(result.a_set) + eval.F(result.a_set, result.b_set);
  result.evaluations = eval.calls();
  Finalize(problem, result, total);
  result.wall_time = SecondsSince(start);
  return result;
}

double TheoreticalBound(const BoundSpec& spec) {
  if (spec.m1 < 1 || spec.m2 < 1) {
    throw InputError("intersection cardinalities must be >= 1");
  }
  const double m1 = spec.m1;
  const double m2 = spec.m2;
  switch (spec.s_kind) {
    case SKind::kModularSet:
      return 1.0 / (m2 * (m1 + 1.0));
    case SKind::kSubmodularSet:
      return 1.0 / ((m1 + 1.0) * (m2 + 1.0));
    case SKind::kSequenceSubmodular:
      return (1.0 - std::exp(-1.0 / (m2 + 1.0))) / (m1 + 1.0);
  }
  throw InputError("unknown objective kind");
}

}  // namespace coupled
