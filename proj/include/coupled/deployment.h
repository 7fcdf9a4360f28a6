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

#ifndef COUPLED_DEPLOYMENT_H_
#define COUPLED_DEPLOYMENT_H_

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "coupled/combinatorics.h"

namespace coupled {

// "Deploy robot `robot` at time step `time`" (time in 1..K). Not deploying is
// the absence of the element.
struct DeploymentElement {
  int robot = 0;
  int time = 1;

  auto operator<=>(const DeploymentElement&) const = default;
};

// Linear measurement y = C x + z, z ~ N(0, Z).
struct SensorModel {
  Eigen::MatrixXd measurement;       // C, q x p
  Eigen::MatrixXd noise_covariance;  // Z, q x q, symmetric positive definite
};

struct DeploymentInstance {
  int horizon = 1;                  // K
  std::vector<SensorModel> robots;  // one model per robot
  std::vector<int> per_time_cap;    // l_k, one per time step
  int max_active_times = 1;         // l
  Eigen::MatrixXd dynamics;         // state transition, p x p, invertible
  // Prior information matrix (inverse covariance) per allocation element.
  std::vector<Eigen::MatrixXd> prior_info;
  // u_b per deployment ground element (time-major, see DeploymentIndex).
  std::vector<double> deploy_rewards;
  // Multiplier on the summed deployment rewards inside s(a, B).
  double reward_weight = 1.0;

  int state_dim() const { return static_cast<int>(dynamics.rows()); }
  int num_robots() const { return static_cast<int>(robots.size()); }
};

// Throws InstanceError on inconsistent shapes, a non-PD prior or noise
// covariance, caps out of range, or negative rewards; NumericError on
// singular dynamics.
void ValidateDeploymentInstance(const DeploymentInstance& inst);

// Ground index of (robot, time): elements are ordered by time, then robot.
inline int DeploymentIndex(int num_robots, int robot, int time) {
  return (time - 1) * num_robots + robot;
}

struct DeploymentGround {
  GroundSet ground;
  std::vector<DeploymentElement> elements;
  // Zero-based time step of each element; the stage partition used by the
  // sequence-mode solvers.
  std::vector<int> stage_of;
};

DeploymentGround BuildDeploymentGroundSet(const DeploymentInstance& inst);

// At most l_k deployments at time k.
ConstraintFamily PerTimeCapacityConstraint(const DeploymentInstance& inst);
// At most l time steps with any deployment.
ConstraintFamily ActiveTimesConstraint(const DeploymentInstance& inst);
// Each (robot, time) chosen at most once. Always satisfied by sets; kept so
// that constraint counts line up with the problem statement.
ConstraintFamily SelectionConstraint(const DeploymentInstance& inst);
// Intersection of the three above.
ConstraintFamily FullDeploymentConstraint(const DeploymentInstance& inst);

// Precomputed evaluator for s(a, B).
//
// Works on information matrices J = P^-1. With T = A^-1, the information at
// the end of the horizon is
//
//   J_K(a, B) = (T^K)' J_1(a) T^K + sum_{(r,k) in B} (T^(K-k))' C_r' Z_r^-1
//               C_r T^(K-k)
//
// and s(a, B) = logdet J_K(a, B) - logdet J_K(a, {}) + w * sum_{b in B} u_b.
// For identity dynamics the reference term is logdet J_1(a), i.e. s is the
// log ratio of prior to posterior covariance determinants plus rewards.
//
// Copies share the precomputed data.
class DeploymentObjective {
 public:
  explicit DeploymentObjective(const DeploymentInstance& inst);

  // Symmetrized J_K(a, B). No range checks.
  Eigen::MatrixXd FinalInformation(int a, std::span<const int> schedule) const;
  double operator()(int a, std::span<const int> schedule) const;

  int allocation_size() const;
  int ground_size() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Checked single-shot versions of the evaluator above. Throw InputError on a
// bad allocation index or schedule element.
Eigen::MatrixXd InformationMatrixFinal(const DeploymentInstance& inst, int a,
                                       std::span<const int> schedule);
double EvaluateDeployment(const DeploymentInstance& inst, int a,
                          std::span<const int> schedule);

// Conditions under which the log-det objective is sequence submodular:
// invertible dynamics, A P_1 A' <= P_1 for every prior covariance, and
// A' M A <= M for every single-robot measurement information M.
struct SequenceAssumptionReport {
  bool dynamics_invertible = false;
  std::vector<bool> prior_contracts;        // per allocation element
  std::vector<bool> measurement_contracts;  // per robot

  bool AllPass() const;
};

// Report only; never throws on failed conditions.
SequenceAssumptionReport CheckSequenceAssumptions(
    const DeploymentInstance& inst, double tolerance = 1e-9);

}  // namespace coupled

#endif  // COUPLED_DEPLOYMENT_H_
