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
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "coupled/allocation.h"
#include "coupled/combinatorics.h"
#include "coupled/deployment.h"
#include "coupled/errors.h"
#include "coupled/objectives.h"
#include "coupled/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace coupled {
namespace {

using ::coupled::testing::FromMask;
using ::coupled::testing::RandomCoupledProblem;
using ::coupled::testing::RandomDeployment;
using ::coupled::testing::RandomPartition;

using CF = ConstraintFamily;

SetFunction Modular(std::vector<double> w) {
  const ModularReward g(std::move(w));
  return [g](std::span<const int> s) { return g.Value(s); };
}

// Problem with g modular and s(a, B) = sum of u_b over B (independent of a).
CoupledProblem TableProblem(std::vector<double> g_weights,
                            std::vector<double> u, CF m1, CF m2) {
  const int num_e = static_cast<int>(g_weights.size());
  const int num_v = static_cast<int>(u.size());
  const ModularReward inner_reward(u);
  return CoupledProblem{
      .g = Modular(g_weights),
      .inner = InnerObjective(
          [inner_reward](int, std::span<const int> b) {
            return inner_reward.Value(b);
          },
          num_e),
      .m1 = std::move(m1),
      .m2 = std::move(m2),
      .e_ground = GroundSet::Unlabeled(num_e),
      .v_ground = GroundSet::Unlabeled(num_v),
      .v_stage = {},
  };
}

// Exhaustive oracle over every pair (A, B) by bitmask.
double ExhaustiveOptimum(const CoupledProblem& p) {
  double best = -std::numeric_limits<double>::infinity();
  const int ne = p.e_ground.size();
  const int nv = p.v_ground.size();
  for (uint32_t am = 0; am < (1u << ne); ++am) {
    const ElementSet a = FromMask(am);
    if (!IsIndependent(p.m1, a)) continue;
    for (uint32_t bm = 0; bm < (1u << nv); ++bm) {
      const ElementSet b = FromMask(bm);
      if (!IsIndependent(p.m2, b)) continue;
      best = std::max(best, EvaluateCoupled(p.g, p.inner, a, b).total);
    }
  }
  return best;
}

CF RandomDeploymentConstraint(Rng& rng, const DeploymentInstance& deploy,
                              int num_v) {
  switch (rng.UniformInt(0, 2)) {
    case 0:
      return CF::MakeIntersection({SelectionConstraint(deploy)});
    case 1:
      return RandomPartition(rng, num_v, 2, 0, 2);
    default:
      return CF::MakeUniform(num_v, rng.UniformInt(0, num_v));
  }
}

TEST(GreedySingleTest, PicksTopTwoUnderUniform) {
  const GreedySelection s =
      GreedySingle(Modular({0.9, 0.5, 0.1}), CF::MakeUniform(3, 2),
                   GroundSet::Unlabeled(3));
  EXPECT_EQ(s.elements, (ElementSet{0, 1}));
  EXPECT_GT(s.evaluations, 0);
}

TEST(GreedySingleTest, ZeroWeightsSelectNothing) {
  const GreedySelection s = GreedySingle(
      Modular({0.0, 0.0, 0.0}), CF::MakeUniform(3, 2), GroundSet::Unlabeled(3));
  EXPECT_TRUE(s.elements.empty());
}

TEST(GreedySingleTest, TieBreaksByLowestIndex) {
  const GreedySelection s = GreedySingle(
      Modular({1.0, 1.0, 1.0}), CF::MakeUniform(3, 1), GroundSet::Unlabeled(3));
  EXPECT_EQ(s.elements, (ElementSet{0}));
}

TEST(GreedySingleTest, WithinBoundOfOptimumOnSubmodularInstances) {
  Rng rng(51);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = rng.UniformInt(2, 8);
    const int m = rng.UniformInt(1, 2);
    std::vector<CF> members;
    for (int i = 0; i < m; ++i) members.push_back(RandomPartition(rng, n, 3, 1, 2));
    const CF c = CF::MakeIntersection(members);
    // Weighted coverage over 6 items.
    std::vector<uint32_t> covers(n);
    for (uint32_t& cv : covers) cv = static_cast<uint32_t>(rng.UniformInt(1, 63));
    std::vector<double> item_weight(6);
    for (double& w : item_weight) w = rng.Uniform01();
    const SetFunction f = [covers, item_weight](std::span<const int> s) {
      uint32_t covered = 0;
      for (int e : s) covered |= covers[e];
      double total = 0.0;
      for (int i = 0; i < 6; ++i) {
        if (covered & (1u << i)) total += item_weight[i];
      }
      return total;
    };
    double optimum = 0.0;
    ForEachIndependentSet(c, [&](std::span<const int> s) {
      optimum = std::max(optimum, f(s));
    });
    const GreedySelection s = GreedySingle(f, c, GroundSet::Unlabeled(n));
    EXPECT_TRUE(IsIndependent(c, s.elements));
    EXPECT_GE(f(s.elements), optimum / (m + 1) - 1e-12);
  }
}

TEST(NestedGreedyTest, ZeroInnerObjectiveReducesToGreedyOnG) {
  CoupledProblem p = TableProblem({0.9, 0.5, 0.1}, {0.0, 0.0},
                                  CF::MakeUniform(3, 2), CF::MakeUniform(2, 2));
  const SolverResult r = NestedGreedy(p);
  EXPECT_EQ(r.a_set, (ElementSet{0, 1}));
  EXPECT_DOUBLE_EQ(r.value.total, 1.4);
  EXPECT_EQ(r.value.h_value, 0.0);
}

TEST(NestedGreedyTest, SingleInnerPickIsBestReward) {
  CoupledProblem p = TableProblem({0.1}, {0.2, 0.7, 0.4},
                                  CF::MakeUniform(1, 1), CF::MakeUniform(3, 1));
  const SolverResult r = NestedGreedy(p);
  EXPECT_EQ(r.a_set, (ElementSet{0}));
  EXPECT_EQ(r.b_set, (ElementSet{1}));
  EXPECT_DOUBLE_EQ(r.value.total, 0.8);
}

TEST(NestedGreedyTest, DiscardedElementsStayDiscarded) {
  // The inner argmax picks element 0 first; it fits. Element 1 is next but
  // infeasible alongside 0 and is discarded for good; element 2 then fits.
  CoupledProblem p = TableProblem({1.0}, {0.9, 0.8, 0.1},
                                  CF::MakeUniform(1, 1),
                                  CF::MakePartition({0, 0, 1}, {1, 1}));
  const SolverResult as_written = NestedGreedy(p);
  EXPECT_EQ(as_written.b_set, (ElementSet{0, 2}));
  const SolverResult filtered =
      NestedGreedy(p, EvalMode::kSet, InnerRule::kFeasibleOnly);
  EXPECT_EQ(filtered.b_set, (ElementSet{0, 2}));
}

TEST(NestedGreedyTest, InfeasibleArgmaxIsSkippedNotRetried) {
  // A cap-0 cell holds the most valuable element: as written, greedy picks
  // it, cannot add it, and moves on; the feasible-only rule never picks it.
  CoupledProblem p = TableProblem({1.0}, {5.0, 1.0}, CF::MakeUniform(1, 1),
                                  CF::MakePartition({0, 1}, {0, 1}));
  EXPECT_EQ(NestedGreedy(p).b_set, (ElementSet{1}));
  EXPECT_EQ(NestedGreedy(p, EvalMode::kSet, InnerRule::kFeasibleOnly).b_set,
            (ElementSet{1}));
}

TEST(NestedGreedyTest, NothingFeasibleGivesEmptyResult) {
  CoupledProblem p = TableProblem({1.0, 2.0}, {1.0}, CF::MakeUniform(2, 0),
                                  CF::MakeUniform(1, 0));
  const SolverResult r = NestedGreedy(p);
  EXPECT_TRUE(r.a_set.empty());
  EXPECT_TRUE(r.b_set.empty());
  EXPECT_EQ(r.value.total, 0.0);
}

// Three allocation triplets, two deployment robots, K = 2, M1 = M11 ∩ M12,
// M2 = M23 with the log-det objective.
TEST(NestedGreedyTest, DeskInstanceMeetsBound) {
  Rng rng(53);
  for (int rep = 0; rep < 50; ++rep) {
    AllocationInstance alloc;
    alloc.robots = {0, 1};
    alloc.tasks = {{0, 0}, {1, 0}};
    alloc.admissible = {{0, 1, 0}, {1, 0, 0}, {1, 1, 0}};
    for (const AllocationElement& a : alloc.admissible) {
      alloc.rewards[a] = rng.Uniform01();
    }
    const DeploymentInstance deploy = RandomDeployment(rng, 2, 2, 3, 3);
    const DeploymentGround v = BuildDeploymentGroundSet(deploy);
    const ModularReward g = AllocationUtility(alloc);
    const CoupledProblem p{
        .g = [g](std::span<const int> s) { return g.Value(s); },
        .inner = InnerObjective(DeploymentObjective(deploy), 3),
        .m1 = AllocationConstraint(alloc),
        .m2 = CF::MakeIntersection({SelectionConstraint(deploy)}),
        .e_ground = BuildAllocationGroundSet(alloc).ground,
        .v_ground = v.ground,
        .v_stage = v.stage_of,
    };
    const double bound = TheoreticalBound({2, 1, GKind::kModular,
                                           SKind::kSubmodularSet});
    const SolverResult greedy = NestedGreedy(p);
    const SolverResult optimal = BruteForceOptimal(p);
    EXPECT_NEAR(optimal.value.total, ExhaustiveOptimum(p), 1e-9);
    EXPECT_GE(greedy.value.total, bound * optimal.value.total);
  }
}

TEST(BruteForceTest, ZeroInnerObjectiveGivesMaxWeightIndependentSet) {
  CoupledProblem p = TableProblem({0.9, 0.5, 0.6, 0.2}, {0.0, 0.0},
                                  CF::MakePartition({0, 0, 1, 1}, {1, 1}),
                                  CF::MakeUniform(2, 2));
  const SolverResult r = BruteForceOptimal(p);
  EXPECT_EQ(r.a_set, (ElementSet{0, 2}));
  EXPECT_DOUBLE_EQ(r.value.total, 1.5);
}

TEST(BruteForceTest, MatchesExhaustiveOracle) {
  Rng rng(55);
  for (int rep = 0; rep < 60; ++rep) {
    const int num_e = rng.UniformInt(1, 5);
    const int robots = rng.UniformInt(1, 2);
    const int horizon = rng.UniformInt(1, 5 / robots);
    const DeploymentInstance deploy =
        RandomDeployment(rng, robots, horizon, rng.UniformInt(1, 3), num_e);
    CF m2 = RandomDeploymentConstraint(rng, deploy, robots * horizon);
    const CoupledProblem p = RandomCoupledProblem(rng, num_e, deploy, m2);
    EXPECT_NEAR(BruteForceOptimal(p).value.total, ExhaustiveOptimum(p), 1e-9);
  }
}

TEST(BruteForceTest, BudgetExceededNamesSizes) {
  CoupledProblem p = TableProblem(std::vector<double>(20, 1.0),
                                  std::vector<double>(6, 1.0),
                                  CF::MakeUniform(20, 2), CF::MakeUniform(6, 2));
  try {
    BruteForceOptimal(p, EvalMode::kSet, 24);
    FAIL() << "expected SizeError";
  } catch (const SizeError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("20"), std::string::npos);
    EXPECT_NE(what.find("6"), std::string::npos);
  }
  EXPECT_NO_THROW(BruteForceOptimal(p, EvalMode::kSet, 26));
}

// With two allocation elements, two deployment elements and a
// non-decreasing s the nested greedy is always optimal, so the smallest
// witness needs a third triplet: element 0 conflicts with both 1 and 2.
TEST(BruteForceTest, ExceedsGreedyOnHandcraftedInstance) {
  CoupledProblem p = TableProblem(
      {1.0, 0.6, 0.6}, {0.5, 0.2},
      CF::MakeIntersection({CF::MakePartition({0, 0, 1}, {1, 1}),
                            CF::MakePartition({0, 1, 0}, {1, 1})}),
      CF::MakeUniform(2, 1));
  const SolverResult greedy = NestedGreedy(p);
  const SolverResult optimal = BruteForceOptimal(p);
  EXPECT_EQ(greedy.a_set, (ElementSet{0}));
  EXPECT_EQ(optimal.a_set, (ElementSet{1, 2}));
  EXPECT_DOUBLE_EQ(greedy.value.total, 1.5);
  EXPECT_DOUBLE_EQ(optimal.value.total, 1.7);
}

TEST(BruteForceTest, ExceedsGreedyOnSomeRandomInstance) {
  Rng rng(57);
  bool found = false;
  for (int rep = 0; rep < 2000 && !found; ++rep) {
    const DeploymentInstance deploy = RandomDeployment(rng, 1, 2, 2, 4);
    const CoupledProblem p = RandomCoupledProblem(
        rng, 4, deploy, CF::MakeUniform(2, rng.UniformInt(1, 2)));
    const double greedy = NestedGreedy(p).value.total;
    const double optimal = BruteForceOptimal(p).value.total;
    found = optimal > greedy + 1e-9;
  }
  EXPECT_TRUE(found);
}

TEST(DecoupledHeuristicTest, MatchesNestedGreedyWhenCouplingIsIrrelevant) {
  Rng rng(59);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> gw(5), u(4);
    for (double& w : gw) w = 0.01 + rng.Uniform01();
    for (double& w : u) w = rng.Uniform01();
    CoupledProblem p = TableProblem(gw, u, RandomPartition(rng, 5, 2, 1, 2),
                                    RandomPartition(rng, 4, 2, 0, 2));
    EXPECT_NEAR(DecoupledHeuristic(p).value.total, NestedGreedy(p).value.total,
                1e-12);
  }
}

TEST(DecoupledHeuristicTest, LosesWhereLowRewardAllocationPaysOff) {
  Rng rng(61);
  bool found = false;
  for (int rep = 0; rep < 2000 && !found; ++rep) {
    const DeploymentInstance deploy = RandomDeployment(rng, 2, 2, 3, 3);
    const CoupledProblem p = RandomCoupledProblem(
        rng, 3, deploy, CF::MakeIntersection({SelectionConstraint(deploy)}));
    found = DecoupledHeuristic(p).value.total + 1e-9 < NestedGreedy(p).value.total;
  }
  EXPECT_TRUE(found);
}

TEST(RandomFeasibleTest, ZeroCapsGiveEmptySelections) {
  CoupledProblem p = TableProblem({1.0, 2.0}, {1.0, 1.0}, CF::MakeUniform(2, 0),
                                  CF::MakeUniform(2, 0));
  const SolverResult r = RandomFeasible(p, 5);
  EXPECT_TRUE(r.a_set.empty());
  EXPECT_TRUE(r.b_set.empty());
}

TEST(RandomFeasibleTest, DeterministicAndMaximal) {
  Rng rng(63);
  for (int rep = 0; rep < 50; ++rep) {
    const DeploymentInstance deploy = RandomDeployment(rng, 2, 3, 2, 6);
    const CoupledProblem p =
        RandomCoupledProblem(rng, 6, deploy, RandomPartition(rng, 6, 3, 0, 2));
    const SolverResult x = RandomFeasible(p, 100 + rep);
    const SolverResult y = RandomFeasible(p, 100 + rep);
    EXPECT_TRUE(SameOutcome(x, y));
    for (int e = 0; e < 6; ++e) {
      if (std::find(x.a_set.begin(), x.a_set.end(), e) == x.a_set.end()) {
        EXPECT_FALSE(CanExtend(p.m1, x.a_set, e));
      }
      if (std::find(x.b_set.begin(), x.b_set.end(), e) == x.b_set.end()) {
        EXPECT_FALSE(CanExtend(p.m2, x.b_set, e));
      }
    }
  }
}

TEST(TheoreticalBoundTest, KnownValues) {
  EXPECT_NEAR(TheoreticalBound({2, 1, GKind::kModular, SKind::kSubmodularSet}),
              1.0 / 6.0, 1e-15);
  EXPECT_NEAR(TheoreticalBound({1, 1, GKind::kModular, SKind::kModularSet}), 0.5,
              1e-15);
  EXPECT_NEAR(
      TheoreticalBound({1, 1, GKind::kModular, SKind::kSequenceSubmodular}),
      0.5 * (1.0 - std::exp(-0.5)), 1e-15);
  EXPECT_NEAR(
      TheoreticalBound({1, 1, GKind::kModular, SKind::kSequenceSubmodular}),
      0.19673, 1e-5);
  EXPECT_THROW(TheoreticalBound({0, 1, GKind::kModular, SKind::kModularSet}),
               InputError);
}

// Feasibility, dominance and bound compliance over random instances, in
// both evaluation modes.
TEST(SolverPropertiesTest, FeasibleDominatedAndWithinBound) {
  Rng rng(65);
  for (int rep = 0; rep < 300; ++rep) {
    const EvalMode mode = rep % 2 == 0 ? EvalMode::kSet : EvalMode::kSequence;
    const int num_e = rng.UniformInt(1, 6);
    const int robots = rng.UniformInt(1, 3);
    const int horizon = rng.UniformInt(1, 3);
    const DeploymentInstance deploy =
        RandomDeployment(rng, robots, horizon, rng.UniformInt(1, 4), num_e);
    const int num_v = robots * horizon;
    const CF m2 = RandomDeploymentConstraint(rng, deploy, num_v);
    const CoupledProblem p = RandomCoupledProblem(rng, num_e, deploy, m2, mode);

    const SolverResult opt = BruteForceOptimal(p, mode);
    const std::vector<SolverResult> others = {
        NestedGreedy(p, mode), DecoupledHeuristic(p, mode),
        RandomFeasible(p, rep, mode),
        NestedGreedy(p, mode, InnerRule::kFeasibleOnly)};
    for (const SolverResult& r : {opt, others[0], others[1], others[2], others[3]}) {
      EXPECT_TRUE(IsIndependent(p.m1, r.a_set));
      EXPECT_TRUE(IsIndependent(p.m2, r.b_set));
      EXPECT_NEAR(r.value.total, r.value.g_value + r.value.h_value, 1e-12);
      const CoupledValue again = EvaluateCoupled(p.g, p.inner, r.a_set, r.b_set);
      EXPECT_NEAR(again.total, r.value.total, 1e-9);
    }
    for (const SolverResult& r : others) {
      EXPECT_LE(r.value.total, opt.value.total + 1e-9);
    }
    if (mode == EvalMode::kSet) {
      const double bound = TheoreticalBound(
          {IntersectionCardinality(p.m1), IntersectionCardinality(p.m2),
           GKind::kModular, SKind::kSubmodularSet});
      EXPECT_GE(others[0].value.total, bound * opt.value.total - 1e-12);
    }
  }
}

TEST(SolverPropertiesTest, SequenceModeOrdersDeploymentsByStage) {
  Rng rng(67);
  for (int rep = 0; rep < 30; ++rep) {
    const DeploymentInstance deploy = RandomDeployment(rng, 3, 3, 2, 4);
    const CoupledProblem p = RandomCoupledProblem(
        rng, 4, deploy, RandomPartition(rng, 9, 3, 0, 2), EvalMode::kSequence);
    for (const SolverResult& r :
         {NestedGreedy(p, EvalMode::kSequence),
          DecoupledHeuristic(p, EvalMode::kSequence),
          RandomFeasible(p, 9, EvalMode::kSequence),
          BruteForceOptimal(p, EvalMode::kSequence)}) {
      for (size_t i = 1; i < r.b_set.size(); ++i) {
        EXPECT_LE(p.v_stage[r.b_set[i - 1]], p.v_stage[r.b_set[i]]);
      }
    }
  }
}

TEST(SolverPropertiesTest, Deterministic) {
  Rng rng(69);
  const DeploymentInstance deploy = RandomDeployment(rng, 2, 3, 3, 5);
  const CoupledProblem p =
      RandomCoupledProblem(rng, 5, deploy, RandomPartition(rng, 6, 2, 1, 2));
  EXPECT_TRUE(SameOutcome(NestedGreedy(p), NestedGreedy(p)));
  EXPECT_TRUE(SameOutcome(DecoupledHeuristic(p), DecoupledHeuristic(p)));
  EXPECT_TRUE(SameOutcome(BruteForceOptimal(p), BruteForceOptimal(p)));
  EXPECT_TRUE(SameOutcome(RandomFeasible(p, 3), RandomFeasible(p, 3)));
}

TEST(SolverPropertiesTest, EvaluationCountWithinCubicQuadraticEnvelope) {
  Rng rng(71);
  for (int num_e : {2, 4, 8, 12}) {
    for (int num_v : {2, 4, 8}) {
      const DeploymentInstance deploy = RandomDeployment(rng, 1, num_v, 2, num_e);
      const CoupledProblem p = RandomCoupledProblem(
          rng, num_e, deploy, CF::MakeUniform(num_v, num_v));
      const SolverResult r = NestedGreedy(p);
      const double envelope =
          std::pow(num_e, 3) * std::pow(num_v, 2);
      EXPECT_LE(static_cast<double>(r.evaluations), 2.0 * envelope + 4.0 * num_e * num_e)
          << num_e << " " << num_v;
    }
  }
}

TEST(SolverInputTest, MismatchedSizesRejected) {
  CoupledProblem p = TableProblem({1.0}, {1.0}, CF::MakeUniform(2, 1),
                                  CF::MakeUniform(1, 1));
  EXPECT_THROW(NestedGreedy(p), InputError);
}

}  // namespace
}  // namespace coupled
