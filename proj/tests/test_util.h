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

#ifndef COUPLED_TESTS_TEST_UTIL_H_
#define COUPLED_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "coupled/combinatorics.h"
#include "coupled/deployment.h"
#include "coupled/objectives.h"
#include "coupled/rng.h"
#include "coupled/solvers.h"

namespace coupled::testing {

inline ElementSet FromMask(uint32_t mask) {
  ElementSet out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Random partition over n elements with up to `cells` cells and caps drawn
// from [min_cap, max_cap].
inline ConstraintFamily RandomPartition(Rng& rng, int n, int cells,
                                        int min_cap, int max_cap) {
  std::vector<int> cell_of(n);
  for (int& c : cell_of) c = rng.UniformInt(0, cells - 1);
  std::vector<int> caps(cells);
  for (int& c : caps) c = rng.UniformInt(min_cap, max_cap);
  return ConstraintFamily::MakePartition(cell_of, caps);
}

inline SensorModel RandomSensor(Rng& rng, int p) {
  SensorModel sensor;
  sensor.measurement.resize(1, p);
  for (int j = 0; j < p; ++j) sensor.measurement(0, j) = rng.Normal();
  sensor.noise_covariance = Eigen::MatrixXd::Identity(1, 1);
  return sensor;
}

inline Eigen::MatrixXd RandomSpd(Rng& rng, int p) {
  Eigen::MatrixXd l(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) l(i, j) = rng.Normal();
  }
  Eigen::MatrixXd out = l * l.transpose();
  out += 1e-3 * Eigen::MatrixXd::Identity(p, p);
  return 0.5 * (out + out.transpose());
}

// Identity-dynamics deployment instance with vacuous caps.
inline DeploymentInstance RandomDeployment(Rng& rng, int robots, int horizon,
                                           int p, int allocation_size) {
  DeploymentInstance inst;
  inst.horizon = horizon;
  for (int r = 0; r < robots; ++r) inst.robots.push_back(RandomSensor(rng, p));
  inst.per_time_cap.assign(horizon, robots);
  inst.max_active_times = horizon;
  inst.dynamics = Eigen::MatrixXd::Identity(p, p);
  for (int a = 0; a < allocation_size; ++a) {
    inst.prior_info.push_back(RandomSpd(rng, p));
  }
  for (int b = 0; b < robots * horizon; ++b) {
    inst.deploy_rewards.push_back(rng.Uniform01());
  }
  return inst;
}

// Coupled problem with a modular g over `num_e` elements, M1 the
// intersection of two random partitions, and the log-det deployment
// objective; M2 is supplied by the caller (over robots * horizon elements).
inline CoupledProblem RandomCoupledProblem(Rng& rng, int num_e,
                                           const DeploymentInstance& deploy,
                                           ConstraintFamily m2,
                                           EvalMode mode = EvalMode::kSet) {
  std::vector<double> weights(num_e);
  for (double& w : weights) w = rng.Uniform01();
  const ModularReward g(weights);
  ConstraintFamily m1 = ConstraintFamily::MakeIntersection(
      {RandomPartition(rng, num_e, 3, 1, 2),
       RandomPartition(rng, num_e, 3, 1, 2)});
  const DeploymentGround v = BuildDeploymentGroundSet(deploy);
  return CoupledProblem{
      .g = [g](std::span<const int> s) { return g.Value(s); },
      .inner = InnerObjective(DeploymentObjective(deploy), num_e, mode),
      .m1 = std::move(m1),
      .m2 = std::move(m2),
      .e_ground = GroundSet::Unlabeled(num_e),
      .v_ground = v.ground,
      .v_stage = v.stage_of,
  };
}

}  // namespace coupled::testing

#endif  // COUPLED_TESTS_TEST_UTIL_H_
