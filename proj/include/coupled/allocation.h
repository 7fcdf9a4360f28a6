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

#ifndef COUPLED_ALLOCATION_H_
#define COUPLED_ALLOCATION_H_

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "coupled/combinatorics.h"
#include "coupled/objectives.h"

namespace coupled {

// "Robot `robot` performs functionality `functionality` for requirement
// `requirement`." A (functionality, requirement) pair is a task.
struct AllocationElement {
  int robot = 0;
  int functionality = 0;
  int requirement = 0;

  auto operator<=>(const AllocationElement&) const = default;
};

struct AllocationInstance {
  std::vector<int> robots;
  // (functionality, requirement) pairs.
  std::vector<std::pair<int, int>> tasks;
  // Triplets a robot is able to perform; everything else is filtered out of
  // the ground set up front.
  std::vector<AllocationElement> admissible;
  // u_a, defined for exactly the admissible triplets.
  std::map<AllocationElement, double> rewards;
  // Max tasks per robot; robots not listed get 1.
  std::map<int, int> robot_capacity;

  int CapacityOf(int robot) const;
};

// Throws InstanceError when a triplet references an undeclared robot or task,
// a triplet is repeated, rewards do not match the admissible set, or a
// capacity is not positive.
void ValidateAllocationInstance(const AllocationInstance& inst);

struct AllocationGround {
  GroundSet ground;
  // elements[i] is ground element i; sorted by robot, functionality,
  // requirement.
  std::vector<AllocationElement> elements;
};

// One ground element per admissible triplet. Throws InstanceError when there
// are none.
AllocationGround BuildAllocationGroundSet(const AllocationInstance& inst);

// Each robot takes at most its capacity of tasks.
ConstraintFamily IndependenceConstraint(const AllocationInstance& inst);
// Each task is allocated at most once.
ConstraintFamily UniquenessConstraint(const AllocationInstance& inst);
// Intersection of the two above.
ConstraintFamily AllocationConstraint(const AllocationInstance& inst);

// g(A) = sum of u_a, indexed by ground element.
ModularReward AllocationUtility(const AllocationInstance& inst);

}  // namespace coupled

#endif  // COUPLED_ALLOCATION_H_
