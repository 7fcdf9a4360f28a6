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

#include "coupled/objectives.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "coupled/errors.h"
#include "coupled/rng.h"

namespace coupled {
namespace {

constexpr double kNormalizationTolerance = 1e-12;

bool Violates(double lhs, double rhs, double tolerance) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return lhs < rhs - tolerance * scale;
}

ElementSet MaskToSet(uint64_t mask) {
  ElementSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

ElementSet RandomSubset(int n, Rng& rng) {
  ElementSet s;
  for (int e = 0; e < n; ++e) {
    if (rng.Uniform01() < 0.5) s.push_back(e);
  }
  return s;
}

}  // namespace

ModularReward::ModularReward(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InputError("modular reward weights must be finite and >= 0");
    }
  }
}

double ModularReward::Value(std::span<const int> s) const {
  double total = 0.0;
  for (int e : s) total += weights_.at(e);
  return total;
}

InnerObjective::InnerObjective(PairEvaluator pair, int allocation_size,
                               EvalMode mode)
    : pair_(std::move(pair)), allocation_size_(allocation_size), mode_(mode) {
  for (int a = 0; a < allocation_size_; ++a) {
    const double empty = pair_(a, {});
    if (std::abs(empty) > kNormalizationTolerance) {
      throw InputError("inner objective not normalized: s(" +
                       std::to_string(a) + ", {}) = " + std::to_string(empty));
    }
  }
}

double InnerObjective::Pair(int a, std::span<const int> b) const {
  if (mode_ == EvalMode::kSet && !std::is_sorted(b.begin(), b.end())) {
    ElementSet sorted(b.begin(), b.end());
    std::sort(sorted.begin(), sorted.end());
    return pair_(a, sorted);
  }
  return pair_(a, b);
}

double InnerValue(const InnerObjective& obj, std::span<const int> a_set,
                  std::span<const int> b) {
  if (a_set.empty()) return 0.0;
  double best = obj.Pair(a_set.front(), b);
  for (int a : a_set.subspan(1)) best = std::max(best, obj.Pair(a, b));
  return best;
}

CoupledValue EvaluateCoupled(const SetFunction& g, const InnerObjective& obj,
                             std::span<const int> a_set,
                             std::span<const int> b) {
  CoupledValue value;
  value.g_value = g(a_set);
  value.h_value = InnerValue(obj, a_set, b);
  value.total = value.g_value + value.h_value;
  return value;
}

double MarginalGain(const SetFunction& f, std::span<const int> s, int e) {
  if (std::find(s.begin(), s.end(), e) != s.end()) {
    throw InputError("element " + std::to_string(e) + " already in set");
  }
  ElementSet extended(s.begin(), s.end());
  extended.push_back(e);
  std::sort(extended.begin(), extended.end());
  return f(extended) - f(s);
}

PropertyCheck CheckSubmodular(const SetFunction& f, const GroundSet& ground,
                              const PropertyCheckOptions& options) {
  const int n = ground.size();
  PropertyCheck result;
  if (n <= options.exhaustive_cap && n < 31) {
    const uint64_t count = uint64_t{1} << n;
    std::vector<double> value(count);
    for (uint64_t mask = 0; mask < count; ++mask) value[mask] = f(MaskToSet(mask));
    for (uint64_t a = 0; a < count; ++a) {
      for (uint64_t b = a + 1; b < count; ++b) {
        ++result.checks;
        const double lhs = value[a] + value[b];
        const double rhs = value[a | b] + value[a & b];
        if (Violates(lhs, rhs, options.tolerance)) {
          result.holds = false;
          result.witness = {MaskToSet(a), MaskToSet(b)};
          return result;
        }
      }
    }
    return result;
  }

  result.exhaustive = false;
  Rng rng(options.seed);
  for (int i = 0; i < options.samples; ++i) {
    const ElementSet a = RandomSubset(n, rng);
    const ElementSet b = RandomSubset(n, rng);
    ElementSet uni, inter;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(uni));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    ++result.checks;
    if (Violates(f(a) + f(b), f(uni) + f(inter), options.tolerance)) {
      result.holds = false;
      result.witness = {a, b};
      return result;
    }
  }
  return result;
}

PropertyCheck CheckNondecreasing(const SetFunction& f, const GroundSet& ground,
                                 const PropertyCheckOptions& options) {
  const int n = ground.size();
  PropertyCheck result;
  if (n <= options.exhaustive_cap && n < 31) {
    const uint64_t count = uint64_t{1} << n;
    std::vector<double> value(count);
    for (uint64_t mask = 0; mask < count; ++mask) value[mask] = f(MaskToSet(mask));
    for (uint64_t mask = 0; mask < count; ++mask) {
      for (int e = 0; e < n; ++e) {
        const uint64_t bit = uint64_t{1} << e;
        if (mask & bit) continue;
        ++result.checks;
        if (Violates(value[mask | bit], value[mask], options.tolerance)) {
          result.holds = false;
          result.witness = {MaskToSet(mask), MaskToSet(mask | bit)};
          return result;
        }
      }
    }
    return result;
  }

  result.exhaustive = false;
  Rng rng(options.seed);
  for (int i = 0; i < options.samples; ++i) {
    const ElementSet s = RandomSubset(n, rng);
    if (static_cast<int>(s.size()) == n) continue;
    int e;
    do {
      e = rng.UniformInt(0, n - 1);
    } while (std::binary_search(s.begin(), s.end(), e));
    ElementSet extended = s;
    extended.insert(std::upper_bound(extended.begin(), extended.end(), e), e);
    ++result.checks;
    if (Violates(f(extended), f(s), options.tolerance)) {
      result.holds = false;
      result.witness = {s, extended};
      return result;
    }
  }
  return result;
}

SetFunction InducedMaximum(InnerObjective obj,
                           ConstraintFamily deployment_constraint) {
  return [obj = std::move(obj), m2 = std::move(deployment_constraint)](
             std::span<const int> a_set) {
    double best = 0.0;
    ForEachIndependentSet(m2, [&](std::span<const int> b) {
      best = std::max(best, InnerValue(obj, a_set, b));
    });
    return best;
  };
}

}  // namespace coupled
