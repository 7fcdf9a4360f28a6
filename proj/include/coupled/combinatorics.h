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

#ifndef COUPLED_COMBINATORICS_H_
#define COUPLED_COMBINATORICS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coupled {

// A set of ground elements, identified by dense indices. Solvers keep these
// sorted unless they are working in sequence mode.
using ElementSet = std::vector<int>;

// Finite ground set 0..size()-1. Labels carry the domain meaning (an
// allocation triplet, a robot/time pair) and are never interpreted here.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels)
      : labels_(std::move(labels)) {}
  // Labels "0", "1", ...
  static GroundSet Unlabeled(int size);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int element) const { return labels_.at(element); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

// An independence structure over a ground set. Values are immutable once
// built and may be shared freely between threads.
class ConstraintFamily {
 public:
  // |S| <= limit.
  struct Uniform {
    int limit = 0;
  };
  // |S ∩ cell c| <= cap_per_cell[c] for every cell.
  struct Partition {
    std::vector<int> cell_of;
    std::vector<int> cap_per_cell;
  };
  // Number of distinct windows touched by S is <= max_active_windows.
  // Downward-closed, but in general not a matroid.
  struct ActiveWindow {
    std::vector<int> window_of;
    int max_active_windows = 0;
  };
  // Every member accepts S.
  struct Intersection {
    std::vector<ConstraintFamily> members;
  };
  using Kind = std::variant<Uniform, Partition, ActiveWindow, Intersection>;

  static ConstraintFamily MakeUniform(int ground_size, int limit);
  // cap_per_cell must cover every cell index used in cell_of.
  static ConstraintFamily MakePartition(std::vector<int> cell_of,
                                        std::vector<int> cap_per_cell);
  static ConstraintFamily MakeActiveWindow(std::vector<int> window_of,
                                           int max_active_windows);
  // Members must be non-empty and agree on the ground set size.
  static ConstraintFamily MakeIntersection(
      std::vector<ConstraintFamily> members);

  int ground_size() const { return ground_size_; }
  const Kind& kind() const { return kind_; }

  // Optional display name ("M11", ...); not part of the acceptance rule.
  const std::string& name() const { return name_; }
  ConstraintFamily& set_name(std::string name) {
    name_ = std::move(name);
    return *this;
  }

 private:
  ConstraintFamily(int ground_size, Kind kind)
      : ground_size_(ground_size), kind_(std::move(kind)) {}

  int ground_size_ = 0;
  Kind kind_;
  std::string name_;
};

// True iff `s` satisfies the family's acceptance rule. Throws InputError on
// an out-of-range or repeated index. The empty set is always accepted.
bool IsIndependent(const ConstraintFamily& constraint,
                   std::span<const int> s);

// Equivalent to IsIndependent(s ∪ {e}) for an independent `s`, computed from
// per-cell counters. Throws InputError if e is out of range or already in s.
bool CanExtend(const ConstraintFamily& constraint, std::span<const int> s,
               int e);

// Depth-first enumeration of every accepted set, in lexicographic order of
// the sorted element vectors (the empty set first). Rejected sets are pruned
// together with all their supersets, which is exact for downward-closed
// families. Returns the number of sets visited.
int64_t ForEachIndependentSet(
    const ConstraintFamily& constraint,
    const std::function<void(std::span<const int>)>& visit);

// 1 for a single family, the member count for an intersection.
int IntersectionCardinality(const ConstraintFamily& constraint);

struct AxiomReport {
  bool empty_accepted = true;
  bool downward_closed = true;
  // Accepted `superset` whose subset `subset` is rejected.
  struct ClosureWitness {
    ElementSet superset;
    ElementSet subset;
  };
  std::optional<ClosureWitness> closure_witness;

  bool exchange_holds = true;
  // Accepted x, y with |y| < |x| such that no element of x \ y extends y.
  struct ExchangeWitness {
    ElementSet larger;
    ElementSet smaller;
  };
  std::optional<ExchangeWitness> exchange_witness;

  int64_t sets_checked = 0;
  bool exhaustive = true;

  bool IsMatroid() const {
    return empty_accepted && downward_closed && exchange_holds;
  }
};

inline constexpr int kDefaultAxiomCap = 10;

// Exhaustive matroid-axiom audit. Enumerates every subset of the ground set,
// so the ground set must have at most `exhaustiveness_cap` elements;
// otherwise throws SizeError pointing at VerifyAxiomsSampled.
AxiomReport VerifyAxioms(const ConstraintFamily& constraint,
                         const GroundSet& ground,
                         int exhaustiveness_cap = kDefaultAxiomCap);

// Randomized, non-exhaustive audit for larger ground sets: draws `samples`
// accepted sets by random growth and checks single-element removals plus the
// exchange property on random pairs. A clean report is evidence, not proof.
AxiomReport VerifyAxiomsSampled(const ConstraintFamily& constraint,
                                const GroundSet& ground, int samples,
                                uint64_t seed);

// Re-runs the membership queries behind every witness in `report`; true iff
// each witness still demonstrates its violation.
bool WitnessesReproduce(const ConstraintFamily& constraint,
                        const AxiomReport& report);

}  // namespace coupled

#endif  // COUPLED_COMBINATORICS_H_
