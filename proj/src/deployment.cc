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

#include "coupled/deployment.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coupled/errors.h"

namespace coupled {
namespace {

constexpr double kSymmetryTolerance = 1e-9;

bool IsSymmetric(const Eigen::MatrixXd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

bool IsPositiveDefinite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || !IsSymmetric(m)) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

double LogDet(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericError("information matrix is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

// Smallest eigenvalue of the symmetric part of m.
double MinEigenvalue(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXd MeasurementInformation(const SensorModel& sensor) {
  const Eigen::MatrixXd& c = sensor.measurement;
  return c.transpose() * sensor.noise_covariance.llt().solve(c);
}

void CheckSchedule(const DeploymentInstance& inst, int a,
                   std::span<const int> schedule) {
  if (a < 0 || a >= static_cast<int>(inst.prior_info.size())) {
    throw InputError("allocation element " + std::to_string(a) +
                     " has no prior");
  }
  const int n = inst.num_robots() * inst.horizon;
  std::vector<char> seen(n, 0);
  for (int b : schedule) {
    if (b < 0 || b >= n) {
      throw InputError("deployment element " + std::to_string(b) +
                       " outside ground set");
    }
    if (seen[b]) {
      throw InputError("deployment element " + std::to_string(b) +
                       " repeated");
    }
    seen[b] = 1;
  }
}

}  // namespace

void ValidateDeploymentInstance(const DeploymentInstance& inst) {
  if (inst.horizon < 1) throw InstanceError("horizon must be >= 1");
  if (inst.robots.empty()) throw InstanceError("need at least one robot");
  const int p = inst.state_dim();
  if (p < 1 || inst.dynamics.cols() != p) {
    throw InstanceError("dynamics must be a non-empty square matrix");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(inst.dynamics);
  if (!lu.isInvertible()) throw NumericError("dynamics matrix is singular");

  for (int r = 0; r < inst.num_robots(); ++r) {
    const SensorModel& s = inst.robots[r];
    const std::string who = "robot " + std::to_string(r);
    if (s.measurement.cols() != p || s.measurement.rows() < 1) {
      throw InstanceError(who + ": measurement matrix must have " +
                          std::to_string(p) + " columns");
    }
    if (s.noise_covariance.rows() != s.measurement.rows() ||
        !IsPositiveDefinite(s.noise_covariance)) {
      throw InstanceError(who +
                          ": noise covariance must be SPD with one row per "
                          "measurement");
    }
  }
  if (static_cast<int>(inst.per_time_cap.size()) != inst.horizon) {
    throw InstanceError("need one per-time cap per time step");
  }
  for (int cap : inst.per_time_cap) {
    if (cap < 0 || cap > inst.num_robots()) {
      throw InstanceError("per-time cap must lie in [0, number of robots]");
    }
  }
  if (inst.max_active_times < 0 || inst.max_active_times > inst.horizon) {
    throw InstanceError("max active times must lie in [0, horizon]");
  }
  if (inst.prior_info.empty()) throw InstanceError("no prior information");
  for (size_t a = 0; a < inst.prior_info.size(); ++a) {
    const Eigen::MatrixXd& j = inst.prior_info[a];
    if (j.rows() != p || j.cols() != p || !IsPositiveDefinite(j)) {
      throw InstanceError("prior for allocation element " + std::to_string(a) +
                          " is not a symmetric positive definite " +
                          std::to_string(p) + "x" + std::to_string(p) +
                          " matrix");
    }
  }
  if (static_cast<int>(inst.deploy_rewards.size()) !=
      inst.num_robots() * inst.horizon) {
    throw InstanceError("need one deployment reward per (robot, time)");
  }
  for (double u : inst.deploy_rewards) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
      throw InstanceError("deployment rewards must be finite and >= 0");
    }
  }
  if (!(inst.reward_weight >= 0.0) || !std::isfinite(inst.reward_weight)) {
    throw InstanceError("reward weight must be finite and >= 0");
  }
}

DeploymentGround BuildDeploymentGroundSet(const DeploymentInstance& inst) {
  if (inst.horizon < 1 || inst.robots.empty()) {
    throw InstanceError("deployment ground set needs K >= 1 and a robot");
  }
  DeploymentGround out;
  std::vector<std::string> labels;
  for (int k = 1; k <= inst.horizon; ++k) {
    for (int r = 0; r < inst.num_robots(); ++r) {
      out.elements.push_back({r, k});
      out.stage_of.push_back(k - 1);
      labels.push_back("(r" + std::to_string(r) + ",k" + std::to_string(k) +
                       ")");
    }
  }
  out.ground = GroundSet(std::move(labels));
  return out;
}

ConstraintFamily PerTimeCapacityConstraint(const DeploymentInstance& inst) {
  const DeploymentGround g = BuildDeploymentGroundSet(inst);
  std::vector<int> caps = inst.per_time_cap;
  caps.resize(inst.horizon, inst.num_robots());
  return ConstraintFamily::MakePartition(g.stage_of, std::move(caps))
      .set_name("M21");
}

ConstraintFamily ActiveTimesConstraint(const DeploymentInstance& inst) {
  const DeploymentGround g = BuildDeploymentGroundSet(inst);
  return ConstraintFamily::MakeActiveWindow(g.stage_of, inst.max_active_times)
      .set_name("M22");
}

ConstraintFamily SelectionConstraint(const DeploymentInstance& inst) {
  const DeploymentGround g = BuildDeploymentGroundSet(inst);
  const int n = g.ground.size();
  std::vector<int> cell_of(n);
  for (int i = 0; i < n; ++i) cell_of[i] = i;
  return ConstraintFamily::MakePartition(std::move(cell_of),
                                         std::vector<int>(n, 1))
      .set_name("M23");
}

ConstraintFamily FullDeploymentConstraint(const DeploymentInstance& inst) {
  return ConstraintFamily::MakeIntersection({PerTimeCapacityConstraint(inst),
                                             ActiveTimesConstraint(inst),
                                             SelectionConstraint(inst)})
      .set_name("M2");
}

struct DeploymentObjective::Data {
  // Prior transported to the end of the horizon, per allocation element.
  std::vector<Eigen::MatrixXd> transported_prior;
  std::vector<double> reference_logdet;
  // Information added by each deployment element, transported to time K.
  std::vector<Eigen::MatrixXd> increment;
  std::vector<double> weighted_reward;
};

DeploymentObjective::DeploymentObjective(const DeploymentInstance& inst) {
  ValidateDeploymentInstance(inst);
  const int p = inst.state_dim();
  const int num_robots = inst.num_robots();
  const Eigen::MatrixXd inverse = inst.dynamics.inverse();

  // back[j] = A^-j for j = 0..K.
  std::vector<Eigen::MatrixXd> back(inst.horizon + 1);
  back[0] = Eigen::MatrixXd::Identity(p, p);
  for (int j = 1; j <= inst.horizon; ++j) back[j] = back[j - 1] * inverse;

  auto data = std::make_shared<Data>();
  for (const Eigen::MatrixXd& prior : inst.prior_info) {
    const Eigen::MatrixXd& t = back[inst.horizon];
    Eigen::MatrixXd moved = t.transpose() * prior * t;
    moved = 0.5 * (moved + moved.transpose());
    data->reference_logdet.push_back(LogDet(moved));
    data->transported_prior.push_back(std::move(moved));
  }
  std::vector<Eigen::MatrixXd> measurement_info;
  for (const SensorModel& s : inst.robots) {
    measurement_info.push_back(MeasurementInformation(s));
  }
  data->increment.resize(num_robots * inst.horizon);
  data->weighted_reward.resize(num_robots * inst.horizon);
  for (int k = 1; k <= inst.horizon; ++k) {
    const Eigen::MatrixXd& t = back[inst.horizon - k];
    for (int r = 0; r < num_robots; ++r) {
      const int b = DeploymentIndex(num_robots, r, k);
      data->increment[b] = t.transpose() * measurement_info[r] * t;
      data->weighted_reward[b] = inst.reward_weight * inst.deploy_rewards[b];
    }
  }
  data_ = std::move(data);
}

Eigen::MatrixXd DeploymentObjective::FinalInformation(
    int a, std::span<const int> schedule) const {
  Eigen::MatrixXd info = data_->transported_prior[a];
  for (int b : schedule) info += data_->increment[b];
  return 0.5 * (info + info.transpose());
}

double DeploymentObjective::operator()(int a,
                                       std::span<const int> schedule) const {
  if (schedule.empty()) return 0.0;
  double reward = 0.0;
  for (int b : schedule) reward += data_->weighted_reward[b];
  return LogDet(FinalInformation(a, schedule)) - data_->reference_logdet[a] +
         reward;
}

int DeploymentObjective::allocation_size() const {
  return static_cast<int>(data_->transported_prior.size());
}

int DeploymentObjective::ground_size() const {
  return static_cast<int>(data_->increment.size());
}

Eigen::MatrixXd InformationMatrixFinal(const DeploymentInstance& inst, int a,
                                       std::span<const int> schedule) {
  ValidateDeploymentInstance(inst);
  CheckSchedule(inst, a, schedule);
  return DeploymentObjective(inst).FinalInformation(a, schedule);
}

double EvaluateDeployment(const DeploymentInstance& inst, int a,
                          std::span<const int> schedule) {
  ValidateDeploymentInstance(inst);
  CheckSchedule(inst, a, schedule);
  return DeploymentObjective(inst)(a, schedule);
}

bool SequenceAssumptionReport::AllPass() const {
  return dynamics_invertible &&
         std::all_of(prior_contracts.begin(), prior_contracts.end(),
                     [](bool b) { return b; }) &&
         std::all_of(measurement_contracts.begin(),
                     measurement_contracts.end(), [](bool b) { return b; });
}

SequenceAssumptionReport CheckSequenceAssumptions(
    const DeploymentInstance& inst, double tolerance) {
  SequenceAssumptionReport report;
  const Eigen::MatrixXd& a = inst.dynamics;
  if (a.rows() == 0 || a.rows() != a.cols()) return report;
  report.dynamics_invertible = Eigen::FullPivLU<Eigen::MatrixXd>(a).isInvertible();

  auto psd = [&](const Eigen::MatrixXd& m, const Eigen::MatrixXd& ref) {
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    return MinEigenvalue(m) >= -tolerance * scale;
  };
  for (const Eigen::MatrixXd& j : inst.prior_info) {
    Eigen::LLT<Eigen::MatrixXd> llt(j);
    if (j.rows() != a.rows() || llt.info() != Eigen::Success) {
      report.prior_contracts.push_back(false);
      continue;
    }
    const Eigen::MatrixXd cov =
        llt.solve(Eigen::MatrixXd::Identity(j.rows(), j.cols()));
    report.prior_contracts.push_back(psd(cov - a * cov * a.transpose(), cov));
  }
  for (const SensorModel& s : inst.robots) {
    if (s.measurement.cols() != a.rows()) {
      report.measurement_contracts.push_back(false);
      continue;
    }
    const Eigen::MatrixXd m = MeasurementInformation(s);
    report.measurement_contracts.push_back(psd(m - a.transpose() * m * a, m));
  }
  return report;
}

}  // namespace coupled
