// Copyright 2026 The dqkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqkit/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dqkit/errors.hpp"

namespace dqkit {
namespace {

Line effector_line(const DualQuaternion& primitive) {
  if (primitive == DualQuaternion(1.0)) return make_line(k_, 0.0);
  return Line::from_dual_quaternion(primitive);
}

Plane effector_plane(const DualQuaternion& primitive) {
  if (primitive == DualQuaternion(1.0)) return make_plane(k_, 0.0);
  return Plane::from_dual_quaternion(primitive);
}

VectorXd scalar_vector(double v) { return VectorXd::Constant(1, v); }

}  // namespace

int task_dimension(ControlObjective objective) {
  switch (objective) {
    case ControlObjective::kDistance:
    case ControlObjective::kDistanceToPlane:
      return 1;
    case ControlObjective::kRotation:
    case ControlObjective::kTranslation:
      return 4;
    case ControlObjective::kLine:
    case ControlObjective::kPlane:
    case ControlObjective::kPose:
      return 8;
  }
  return 0;
}

MatrixXd damped_pseudoinverse(const MatrixXd& jacobian, double damping) {
  const auto rows = jacobian.rows();
  if (damping > 0.0) {
    const MatrixXd jjt =
        jacobian * jacobian.transpose() + damping * damping * MatrixXd::Identity(rows, rows);
    return jacobian.transpose() * jjt.ldlt().solve(MatrixXd::Identity(rows, rows));
  }
  Eigen::JacobiSVD<MatrixXd> svd(jacobian, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  const double tol = std::max(jacobian.rows(), jacobian.cols()) *
                     (s.size() ? s(0) : 0.0) * std::numeric_limits<double>::epsilon();
  VectorXd s_inv = VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) s_inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().transpose();
}

KinematicController::KinematicController(std::shared_ptr<const Kinematics> robot)
    : robot_(std::move(robot)) {
  if (!robot_) throw DomainError("controller needs a robot");
}

void KinematicController::set_control_objective(ControlObjective objective) {
  objective_ = objective;
  reset_stability_counter();
}

void KinematicController::set_gain(double gain) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) throw DomainError("gain must be nonnegative");
  gain_ = gain;
}

void KinematicController::set_damping(double damping) {
  if (!(damping >= 0.0) || !std::isfinite(damping)) {
    throw DomainError("damping must be nonnegative");
  }
  damping_ = damping;
}

void KinematicController::set_stability_threshold(double threshold) {
  if (!(threshold >= 0.0)) throw DomainError("stability threshold must be nonnegative");
  stability_threshold_ = threshold;
}

void KinematicController::set_primitive_to_effector(const DualQuaternion& primitive) {
  primitive_ = primitive;
}

void KinematicController::set_target_primitive(const DualQuaternion& target) {
  target_ = target;
}

ControlObjective KinematicController::require_objective() const {
  if (!objective_) throw NotSetError("control objective is not set");
  return *objective_;
}

VectorXd KinematicController::task_variable(const VectorXd& q) const {
  const ControlObjective objective = require_objective();
  const DualQuaternion x = robot_->fkm(q);
  switch (objective) {
    case ControlObjective::kPose: {
      const DualQuaternion xp = x * primitive_;
      if (!is_unit(xp)) throw DomainError("pose objective needs a unit primitive");
      return vec8(xp);
    }
    case ControlObjective::kTranslation:
      return vec4(translation(x));
    case ControlObjective::kRotation:
      return vec4(rotation(x));
    case ControlObjective::kLine:
      return vec8(transform_line(x, effector_line(primitive_)).dq());
    case ControlObjective::kPlane:
      return vec8(transform_plane(x, effector_plane(primitive_)).dq());
    case ControlObjective::kDistance:
      return scalar_vector(
          point_to_point_squared_distance(translation(x), target_.value_or(DualQuaternion())));
    case ControlObjective::kDistanceToPlane: {
      if (!target_) throw NotSetError("distance-to-plane objective needs a target plane");
      return scalar_vector(
          point_to_plane_distance(translation(x), Plane::from_dual_quaternion(*target_)));
    }
  }
  throw NotSetError("unknown control objective");
}

MatrixXd KinematicController::jacobian(const VectorXd& q) const {
  const ControlObjective objective = require_objective();
  const DualQuaternion x = robot_->fkm(q);
  const MatrixXd j = robot_->pose_jacobian(q);
  switch (objective) {
    case ControlObjective::kPose:
      return haminus8(primitive_) * j;
    case ControlObjective::kTranslation:
      return translation_jacobian(j, x);
    case ControlObjective::kRotation:
      return rotation_jacobian(j);
    case ControlObjective::kLine:
      return line_jacobian(j, x, effector_line(primitive_));
    case ControlObjective::kPlane:
      return plane_jacobian(j, x, effector_plane(primitive_));
    case ControlObjective::kDistance:
      return point_to_point_distance_jacobian(translation_jacobian(j, x), translation(x),
                                              target_.value_or(DualQuaternion()));
    case ControlObjective::kDistanceToPlane: {
      if (!target_) throw NotSetError("distance-to-plane objective needs a target plane");
      return point_to_plane_distance_jacobian(translation_jacobian(j, x), translation(x),
                                              Plane::from_dual_quaternion(*target_));
    }
  }
  throw NotSetError("unknown control objective");
}

VectorXd KinematicController::task_error(const VectorXd& q, const VectorXd& task_reference,
                                         const VectorXd& task_feedforward) const {
  const int dim = task_dimension(require_objective());
  if (task_reference.size() != dim || task_feedforward.size() != dim) {
    throw DimensionError("task reference must have " + std::to_string(dim) + " entries");
  }
  return task_variable(q) - task_reference;
}

VectorXd KinematicController::compute_setpoint_control_signal(const VectorXd& q,
                                                              const VectorXd& task_reference) {
  return compute_tracking_control_signal(q, task_reference,
                                         VectorXd::Zero(task_reference.size()));
}

bool KinematicController::verify_stability(const VectorXd& task_error) {
  const double e = task_error.norm();
  if (has_error_ && std::abs(e - last_error_norm_) < stability_threshold_) {
    ++stable_count_;
  } else {
    // A lone sample opens a new run.
    stable_count_ = 1;
  }
  has_error_ = true;
  last_error_norm_ = e;
  last_error_ = task_error;
  return system_reached_stable_region();
}

bool KinematicController::system_reached_stable_region() const {
  return stable_count_ >= kStableUpdates;
}

void KinematicController::reset_stability_counter() {
  stable_count_ = 0;
  has_error_ = false;
  last_error_norm_ = 0.0;
  last_error_.resize(0);
}

PseudoinverseController::PseudoinverseController(std::shared_ptr<const Kinematics> robot)
    : KinematicController(std::move(robot)) {}

VectorXd PseudoinverseController::compute_tracking_control_signal(
    const VectorXd& q, const VectorXd& task_reference, const VectorXd& task_feedforward) {
  const VectorXd err = task_error(q, task_reference, task_feedforward);
  const MatrixXd j = jacobian(q);
  verify_stability(err);
  return damped_pseudoinverse(j, damping()) * (-gain() * err + task_feedforward);
}

TaskspaceQuadraticProgrammingController::TaskspaceQuadraticProgrammingController(
    std::shared_ptr<const Kinematics> robot)
    : KinematicController(std::move(robot)) {
  clear_constraints();
}

void TaskspaceQuadraticProgrammingController::set_inequality_constraint(const MatrixXd& A,
                                                                        const VectorXd& a) {
  if (A.rows() != a.size() || (A.rows() > 0 && A.cols() != robot().dof())) {
    throw DimensionError("inequality constraint must be m x " + std::to_string(robot().dof()) +
                         " with m entries on the right-hand side");
  }
  A_ = A;
  a_ = a;
}

void TaskspaceQuadraticProgrammingController::set_equality_constraint(const MatrixXd& B,
                                                                      const VectorXd& b) {
  if (B.rows() != b.size() || (B.rows() > 0 && B.cols() != robot().dof())) {
    throw DimensionError("equality constraint must be p x " + std::to_string(robot().dof()) +
                         " with p entries on the right-hand side");
  }
  B_ = B;
  b_ = b;
}

void TaskspaceQuadraticProgrammingController::clear_constraints() {
  const int n = robot().dof();
  A_.resize(0, n);
  a_.resize(0);
  B_.resize(0, n);
  b_.resize(0);
}

QPProblem TaskspaceQuadraticProgrammingController::assemble(
    const VectorXd& q, const VectorXd& task_reference, const VectorXd& task_feedforward) const {
  const VectorXd err = task_error(q, task_reference, task_feedforward);
  const MatrixXd j = jacobian(q);
  QPProblem problem;
  problem.H = compute_objective_function_symmetric_matrix(j, err);
  problem.h = compute_objective_function_linear_component(j, err, task_feedforward);
  problem.A = A_;
  problem.a = a_;
  problem.B = B_;
  problem.b = b_;
  return problem;
}

VectorXd TaskspaceQuadraticProgrammingController::compute_tracking_control_signal(
    const VectorXd& q, const VectorXd& task_reference, const VectorXd& task_feedforward) {
  const QPProblem problem = assemble(q, task_reference, task_feedforward);
  verify_stability(task_variable(q) - task_reference);
  return solve_qp(problem).u;
}

ClassicQPController::ClassicQPController(std::shared_ptr<const Kinematics> robot)
    : TaskspaceQuadraticProgrammingController(std::move(robot)) {}

MatrixXd ClassicQPController::compute_objective_function_symmetric_matrix(
    const MatrixXd& jacobian, const VectorXd& /*task_error*/) const {
  const auto n = jacobian.cols();
  return 2.0 * (jacobian.transpose() * jacobian +
                damping() * damping() * MatrixXd::Identity(n, n));
}

VectorXd ClassicQPController::compute_objective_function_linear_component(
    const MatrixXd& jacobian, const VectorXd& task_error,
    const VectorXd& task_feedforward) const {
  return 2.0 * jacobian.transpose() * (gain() * task_error - task_feedforward);
}

}  // namespace dqkit
