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

#include "coupled/combinatorics.h"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include "coupled/errors.h"
#include "coupled/rng.h"

namespace coupled {
namespace {

void ValidateSet(const ConstraintFamily& constraint, std::span<const int> s) {
  std::vector<char> seen(constraint.ground_size(), 0);
  for (int e : s) {
    if (e < 0 || e >= constraint.ground_size()) {
      throw InputError("element " + std::to_string(e) +
                       " outside ground set of size " +
                       std::to_string(constraint.ground_size()));
    }
    if (seen[e]) {
      throw InputError("element " + std::to_string(e) + " repeated in set");
    }
    seen[e] = 1;
  }
}

int CountDistinct(std::span<const int> labels_of, std::span<const int> s) {
  std::vector<int> used;
  used.reserve(s.size());
  for (int e : s) used.push_back(labels_of[e]);
  std::sort(used.begin(), used.end());
  return static_cast<int>(std::unique(used.begin(), used.end()) - used.begin());
}

bool Accepts(const ConstraintFamily& constraint, std::span<const int> s) {
  return std::visit(
      [&](const auto& kind) -> bool {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ConstraintFamily::Uniform>) {
          return static_cast<int>(s.size()) <= kind.limit;
        } else if constexpr (std::is_same_v<T, ConstraintFamily::Partition>) {
          std::vector<int> count(kind.cap_per_cell.size(), 0);
          for (int e : s) {
            const int cell = kind.cell_of[e];
            if (++count[cell] > kind.cap_per_cell[cell]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T,
                                            ConstraintFamily::ActiveWindow>) {
          return CountDistinct(kind.window_of, s) <= kind.max_active_windows;
        } else {
          for (const ConstraintFamily& member : kind.members) {
            if (!Accepts(member, s)) return false;
          }
          return true;
        }
      },
      constraint.kind());
}

bool ExtendsIndependent(const ConstraintFamily& constraint,
                        std::span<const int> s, int e) {
  return std::visit(
      [&](const auto& kind) -> bool {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ConstraintFamily::Uniform>) {
          return static_cast<int>(s.size()) + 1 <= kind.limit;
        } else if constexpr (std::is_same_v<T, ConstraintFamily::Partition>) {
          const int cell = kind.cell_of[e];
          const auto in_cell = std::count_if(s.begin(), s.end(), [&](int x) {
            return kind.cell_of[x] == cell;
          });
          return in_cell + 1 <= kind.cap_per_cell[cell];
        } else if constexpr (std::is_same_v<T,
                                            ConstraintFamily::ActiveWindow>) {
          const int window = kind.window_of[e];
          for (int x : s) {
            if (kind.window_of[x] == window) return true;
          }
          return CountDistinct(kind.window_of, s) + 1 <=
                 kind.max_active_windows;
        } else {
          for (const ConstraintFamily& member : kind.members) {
            if (!ExtendsIndependent(member, s, e)) return false;
          }
          return true;
        }
      },
      constraint.kind());
}

ElementSet MaskToSet(uint32_t mask) {
  ElementSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

void CheckGround(const ConstraintFamily& constraint, const GroundSet& ground) {
  if (constraint.ground_size() != ground.size()) {
    throw InputError("constraint is over " +
                     std::to_string(constraint.ground_size()) +
                     " elements but ground set has " +
                     std::to_string(ground.size()));
  }
}

}  // namespace

GroundSet GroundSet::Unlabeled(int size) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (int i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

ConstraintFamily ConstraintFamily::MakeUniform(int ground_size, int limit) {
  if (ground_size < 0 || limit < 0) {
    throw InputError("uniform family needs non-negative size and limit");
  }
  return ConstraintFamily(ground_size, Uniform{limit});
}

ConstraintFamily ConstraintFamily::MakePartition(
    std::vector<int> cell_of, std::vector<int> cap_per_cell) {
  for (int cap : cap_per_cell) {
    if (cap < 0) throw InputError("partition cap must be non-negative");
  }
  for (int cell : cell_of) {
    if (cell < 0 || cell >= static_cast<int>(cap_per_cell.size())) {
      throw InputError("partition cell " + std::to_string(cell) +
                       " has no cap");
    }
  }
  const int n = static_cast<int>(cell_of.size());
  return ConstraintFamily(
      n, Partition{std::move(cell_of), std::move(cap_per_cell)});
}

ConstraintFamily ConstraintFamily::MakeActiveWindow(std::vector<int> window_of,
                                                    int max_active_windows) {
  if (max_active_windows < 0) {
    throw InputError("max_active_windows must be non-negative");
  }
  for (int w : window_of) {
    if (w < 0) throw InputError("window index must be non-negative");
  }
  const int n = static_cast<int>(window_of.size());
  return ConstraintFamily(n,
                          ActiveWindow{std::move(window_of), max_active_windows});
}

ConstraintFamily ConstraintFamily::MakeIntersection(
    std::vector<ConstraintFamily> members) {
  if (members.empty()) {
    throw InputError("intersection needs at least one member");
  }
  const int n = members.front().ground_size();
  for (const ConstraintFamily& m : members) {
    if (m.ground_size() != n) {
      throw InputError("intersection members disagree on ground set size");
    }
  }
  return ConstraintFamily(n, Intersection{std::move(members)});
}

bool IsIndependent(const ConstraintFamily& constraint,
                   std::span<const int> s) {
  ValidateSet(constraint, s);
  return Accepts(constraint, s);
}

bool CanExtend(const ConstraintFamily& constraint, std::span<const int> s,
               int e) {
  ValidateSet(constraint, s);
  if (e < 0 || e >= constraint.ground_size()) {
    throw InputError("element " + std::to_string(e) + " outside ground set");
  }
  if (std::find(s.begin(), s.end(), e) != s.end()) {
    throw InputError("element " + std::to_string(e) + " already in set");
  }
  return ExtendsIndependent(constraint, s, e);
}

int64_t ForEachIndependentSet(
    const ConstraintFamily& constraint,
    const std::function<void(std::span<const int>)>& visit) {
  const int n = constraint.ground_size();
  ElementSet current;
  int64_t visited = 0;
  auto descend = [&](auto& self, int next) -> void {
    visit(current);
    ++visited;
    for (int e = next; e < n; ++e) {
      if (!ExtendsIndependent(constraint, current, e)) continue;
      current.push_back(e);
      self(self, e + 1);
      current.pop_back();
    }
  };
  if (Accepts(constraint, current)) descend(descend, 0);
  return visited;
}

int IntersectionCardinality(const ConstraintFamily& constraint) {
  if (const auto* inter =
          std::get_if<ConstraintFamily::Intersection>(&constraint.kind())) {
    return static_cast<int>(inter->members.size());
  }
  return 1;
}

AxiomReport VerifyAxioms(const ConstraintFamily& constraint,
                         const GroundSet& ground, int exhaustiveness_cap) {
  CheckGround(constraint, ground);
  const int n = ground.size();
  if (n > exhaustiveness_cap || n > 30) {
    throw SizeError("ground set of " + std::to_string(n) +
                    " elements exceeds the exhaustive cap of " +
                    std::to_string(exhaustiveness_cap) +
                    "; use VerifyAxiomsSampled (non-exhaustive)");
  }
  const uint32_t count = uint32_t{1} << n;
  std::vector<char> accepted(count);
  for (uint32_t mask = 0; mask < count; ++mask) {
    accepted[mask] = Accepts(constraint, MaskToSet(mask)) ? 1 : 0;
  }

  AxiomReport report;
  report.sets_checked = count;
  report.empty_accepted = accepted[0] != 0;

  for (uint32_t mask = 0; mask < count && report.downward_closed; ++mask) {
    if (!accepted[mask]) continue;
    for (uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const uint32_t subset = mask & ~(rest & -rest);
      if (!accepted[subset]) {
        report.downward_closed = false;
        report.closure_witness = AxiomReport::ClosureWitness{
            MaskToSet(mask), MaskToSet(subset)};
        break;
      }
    }
  }

  // extension[y]: elements outside y whose addition keeps y accepted.
  std::vector<std::vector<uint32_t>> by_size(n + 1);
  std::vector<uint32_t> extension(count, 0);
  for (uint32_t mask = 0; mask < count; ++mask) {
    if (!accepted[mask]) continue;
    by_size[std::popcount(mask)].push_back(mask);
    for (int e = 0; e < n; ++e) {
      const uint32_t bit = uint32_t{1} << e;
      if ((mask & bit) == 0 && accepted[mask | bit]) extension[mask] |= bit;
    }
  }
  // For a downward-closed family it suffices to test |y| = |x| - 1: any
  // larger x can be shrunk to an accepted subset of size |y| + 1. Otherwise
  // every smaller y is tested.
  for (int larger_size = 1; larger_size <= n; ++larger_size) {
    const int lowest = report.downward_closed ? larger_size - 1 : 0;
    for (uint32_t larger : by_size[larger_size]) {
      for (int smaller_size = lowest; smaller_size < larger_size;
           ++smaller_size) {
        for (uint32_t smaller : by_size[smaller_size]) {
          if ((larger & ~smaller & extension[smaller]) == 0) {
            report.exchange_holds = false;
            report.exchange_witness = AxiomReport::ExchangeWitness{
                MaskToSet(larger), MaskToSet(smaller)};
            return report;
          }
        }
      }
    }
  }
  return report;
}

AxiomReport VerifyAxiomsSampled(const ConstraintFamily& constraint,
                                const GroundSet& ground, int samples,
                                uint64_t seed) {
  CheckGround(constraint, ground);
  const int n = ground.size();
  Rng rng(seed);
  AxiomReport report;
  report.exhaustive = false;
  report.empty_accepted = Accepts(constraint, {});
  ++report.sets_checked;

  // Random maximal growth; every prefix of the returned order is accepted.
  auto grow = [&]() {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.UniformInt(0, i)]);
    ElementSet picked;
    for (int e : order) {
      if (ExtendsIndependent(constraint, picked, e)) picked.push_back(e);
    }
    return picked;
  };

  for (int sample = 0; sample < samples; ++sample) {
    ElementSet x = grow();
    ElementSet y = grow();
    ++report.sets_checked;

    if (report.downward_closed) {
      ElementSet subset;
      for (int e : x) {
        if (rng.Uniform01() < 0.5) subset.push_back(e);
      }
      ++report.sets_checked;
      if (!Accepts(constraint, subset)) {
        report.downward_closed = false;
        std::sort(x.begin(), x.end());
        std::sort(subset.begin(), subset.end());
        report.closure_witness = AxiomReport::ClosureWitness{x, subset};
      }
    }

    if (report.exchange_holds && !x.empty()) {
      x.resize(rng.UniformInt(1, static_cast<int>(x.size())));
      const int y_cap = std::min(static_cast<int>(x.size()) - 1,
                                 static_cast<int>(y.size()));
      y.resize(rng.UniformInt(0, y_cap));
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      bool extended = false;
      for (int e : x) {
        if (std::binary_search(y.begin(), y.end(), e)) continue;
        ElementSet candidate = y;
        candidate.push_back(e);
        ++report.sets_checked;
        if (Accepts(constraint, candidate)) {
          extended = true;
          break;
        }
      }
      if (!extended) {
        report.exchange_holds = false;
        report.exchange_witness = AxiomReport::ExchangeWitness{x, y};
      }
    }
  }
  return report;
}

bool WitnessesReproduce(const ConstraintFamily& constraint,
                        const AxiomReport& report) {
  if (!report.empty_accepted && IsIndependent(constraint, {})) return false;
  if (const auto& w = report.closure_witness) {
    if (!std::includes(w->superset.begin(), w->superset.end(),
                       w->subset.begin(), w->subset.end())) {
      return false;
    }
    if (!IsIndependent(constraint, w->superset) ||
        IsIndependent(constraint, w->subset)) {
      return false;
    }
  }
  if (const auto& w = report.exchange_witness) {
    if (w->smaller.size() >= w->larger.size()) return false;
    if (!IsIndependent(constraint, w->larger) ||
        !IsIndependent(constraint, w->smaller)) {
      return false;
    }
    for (int e : w->larger) {
      if (std::find(w->smaller.begin(), w->smaller.end(), e) !=
          w->smaller.end()) {
        continue;
      }
      if (CanExtend(constraint, w->smaller, e)) return false;
    }
  }
  return true;
}

}  // namespace coupled
