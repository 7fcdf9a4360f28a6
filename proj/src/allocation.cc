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

#include "coupled/allocation.h"

#include <algorithm>
#include <set>
#include <string>

#include "coupled/errors.h"

namespace coupled {
namespace {

std::string Describe(const AllocationElement& a) {
  return "(" + std::to_string(a.robot) + "," +
         std::to_string(a.functionality) + "," +
         std::to_string(a.requirement) + ")";
}

}  // namespace

int AllocationInstance::CapacityOf(int robot) const {
  const auto it = robot_capacity.find(robot);
  return it == robot_capacity.end() ? 1 : it->second;
}

void ValidateAllocationInstance(const AllocationInstance& inst) {
  const std::set<int> robots(inst.robots.begin(), inst.robots.end());
  const std::set<std::pair<int, int>> tasks(inst.tasks.begin(),
                                            inst.tasks.end());
  std::set<AllocationElement> seen;
  for (const AllocationElement& a : inst.admissible) {
    if (!robots.contains(a.robot)) {
      throw InstanceError("triplet " + Describe(a) + " names unknown robot");
    }
    if (!tasks.contains({a.functionality, a.requirement})) {
      throw InstanceError("triplet " + Describe(a) + " names unknown task");
    }
    if (!seen.insert(a).second) {
      throw InstanceError("triplet " + Describe(a) + " listed twice");
    }
    const auto reward = inst.rewards.find(a);
    if (reward == inst.rewards.end()) {
      throw InstanceError("triplet " + Describe(a) + " has no reward");
    }
    if (!(reward->second >= 0.0)) {
      throw InstanceError("triplet " + Describe(a) + " has negative reward");
    }
  }
  if (inst.rewards.size() != seen.size()) {
    throw InstanceError("rewards given for non-admissible triplets");
  }
  for (const auto& [robot, cap] : inst.robot_capacity) {
    if (!robots.contains(robot)) {
      throw InstanceError("capacity for unknown robot " +
                          std::to_string(robot));
    }
    if (cap <= 0) {
      throw InstanceError("robot " + std::to_string(robot) +
                          " capacity must be positive");
    }
  }
}

AllocationGround BuildAllocationGroundSet(const AllocationInstance& inst) {
  ValidateAllocationInstance(inst);
  if (inst.admissible.empty()) {
    throw InstanceError("allocation instance has no admissible triplets");
  }
  AllocationGround out;
  out.elements = inst.admissible;
  std::sort(out.elements.begin(), out.elements.end());
  std::vector<std::string> labels;
  labels.reserve(out.elements.size());
  for (const AllocationElement& a : out.elements) labels.push_back(Describe(a));
  out.ground = GroundSet(std::move(labels));
  return out;
}

ConstraintFamily IndependenceConstraint(const AllocationInstance& inst) {
  const AllocationGround g = BuildAllocationGroundSet(inst);
  std::vector<int> robots = inst.robots;
  std::sort(robots.begin(), robots.end());
  robots.erase(std::unique(robots.begin(), robots.end()), robots.end());
  std::vector<int> caps;
  for (int r : robots) caps.push_back(inst.CapacityOf(r));
  std::vector<int> cell_of;
  for (const AllocationElement& a : g.elements) {
    cell_of.push_back(static_cast<int>(
        std::lower_bound(robots.begin(), robots.end(), a.robot) -
        robots.begin()));
  }
  return ConstraintFamily::MakePartition(std::move(cell_of), std::move(caps))
      .set_name("M11");
}

ConstraintFamily UniquenessConstraint(const AllocationInstance& inst) {
  const AllocationGround g = BuildAllocationGroundSet(inst);
  std::vector<std::pair<int, int>> tasks = inst.tasks;
  std::sort(tasks.begin(), tasks.end());
  tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());
  std::vector<int> cell_of;
  for (const AllocationElement& a : g.elements) {
    const std::pair<int, int> task{a.functionality, a.requirement};
    cell_of.push_back(static_cast<int>(
        std::lower_bound(tasks.begin(), tasks.end(), task) - tasks.begin()));
  }
  return ConstraintFamily::MakePartition(std::move(cell_of),
                                         std::vector<int>(tasks.size(), 1))
      .set_name("M12");
}

ConstraintFamily AllocationConstraint(const AllocationInstance& inst) {
  return ConstraintFamily::MakeIntersection(
             {IndependenceConstraint(inst), UniquenessConstraint(inst)})
      .set_name("M1");
}

ModularReward AllocationUtility(const AllocationInstance& inst) {
  const AllocationGround g = BuildAllocationGroundSet(inst);
  std::vector<double> weights;
  weights.reserve(g.elements.size());
  for (const AllocationElement& a : g.elements) {
    weights.push_back(inst.rewards.at(a));
  }
  return ModularReward(std::move(weights));
}

}  // namespace coupled
