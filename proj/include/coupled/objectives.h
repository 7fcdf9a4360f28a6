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

#ifndef COUPLED_OBJECTIVES_H_
#define COUPLED_OBJECTIVES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coupled/combinatorics.h"

namespace coupled {

// Real-valued function on subsets of a ground set.
using SetFunction = std::function<double(std::span<const int>)>;

// g(S) = sum of non-negative per-element weights.
class ModularReward {
 public:
  // Throws InputError on a negative or non-finite weight.
  explicit ModularReward(std::vector<double> weights);

  double Value(std::span<const int> s) const;
  double operator()(std::span<const int> s) const { return Value(s); }

  double weight(int element) const { return weights_.at(element); }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<double> weights_;
};

// How the deployment argument of s(a, B) is interpreted.
enum class EvalMode {
  kSet,       // order-free; B is canonicalized to ascending order
  kSequence,  // B is evaluated in the order given
};

// s(a, B): payoff of allocation element `a` under deployment `b`.
using PairEvaluator =
    std::function<double(int allocation_element, std::span<const int> b)>;

// Max-aggregate inner objective f(A, B) = max_{a in A} s(a, B).
class InnerObjective {
 public:
  // Checks normalization, s(a, {}) == 0, for every a < allocation_size and
  // throws InputError otherwise.
  InnerObjective(PairEvaluator pair, int allocation_size,
                 EvalMode mode = EvalMode::kSet);

  // s(a, b), canonicalizing b in set mode.
  double Pair(int a, std::span<const int> b) const;

  EvalMode mode() const { return mode_; }
  int allocation_size() const { return allocation_size_; }

 private:
  PairEvaluator pair_;
  int allocation_size_;
  EvalMode mode_;
};

// f(A, B); 0 for an empty allocation.
double InnerValue(const InnerObjective& obj, std::span<const int> a_set,
                  std::span<const int> b);

struct CoupledValue {
  double g_value = 0.0;
  double h_value = 0.0;
  double total = 0.0;
};

CoupledValue EvaluateCoupled(const SetFunction& g, const InnerObjective& obj,
                             std::span<const int> a_set,
                             std::span<const int> b);

// f(S ∪ {e}) - f(S). Throws InputError when e is already in s.
double MarginalGain(const SetFunction& f, std::span<const int> s, int e);

// Outcome of a set-function property audit. For submodularity the witness is
// the pair (A, B) breaking f(A) + f(B) >= f(A ∪ B) + f(A ∩ B); for
// monotonicity it is (S, S ∪ {e}) with f(S) > f(S ∪ {e}).
struct PropertyCheck {
  bool holds = true;
  std::optional<std::pair<ElementSet, ElementSet>> witness;
  int64_t checks = 0;
  bool exhaustive = true;
};

struct PropertyCheckOptions {
  // Ground sets up to this size are checked over all pairs.
  int exhaustive_cap = 10;
  // Random pairs drawn above the cap.
  int samples = 20000;
  uint64_t seed = 1;
  // Violations smaller than tolerance * max(1, |terms|) are ignored.
  double tolerance = 1e-9;
};

PropertyCheck CheckSubmodular(const SetFunction& f, const GroundSet& ground,
                              const PropertyCheckOptions& options = {});
PropertyCheck CheckNondecreasing(const SetFunction& f, const GroundSet& ground,
                                 const PropertyCheckOptions& options = {});

// h(A) = max over B accepted by `deployment_constraint` of f(A, B), by
// exhaustive enumeration of the accepted sets.
SetFunction InducedMaximum(InnerObjective obj,
                           ConstraintFamily deployment_constraint);

}  // namespace coupled

#endif  // COUPLED_OBJECTIVES_H_
