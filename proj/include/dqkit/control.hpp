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

// Differential-kinematics controllers.
//
// A controller owns a gain, a damping factor and a control objective. The
// objective selects the task variable x(q) and the task Jacobian J(q); every
// controller then turns the task error x - xd (and optionally a feedforward
// term xd_dot) into a configuration velocity u.

#ifndef DQKIT_CONTROL_HPP_
#define DQKIT_CONTROL_HPP_

#include <memory>
#include <optional>

#include "dqkit/kinematics.hpp"
#include "dqkit/qp_solver.hpp"

namespace dqkit {

enum class ControlObjective {
  kDistance,         // squared distance from the effector to a target point
  kDistanceToPlane,  // signed distance from the effector to a target plane
  kLine,
  kPlane,
  kPose,
  kRotation,
  kTranslation,
};

// Rows of the task variable for an objective: 1, 4 or 8.
int task_dimension(ControlObjective objective);

// J'(JJ' + damping^2 I)^-1 for damping > 0, Moore-Penrose inverse otherwise.
MatrixXd damped_pseudoinverse(const MatrixXd& jacobian, double damping);

class KinematicController {
 public:
  static constexpr double kDefaultDamping = 0.01;
  static constexpr double kDefaultStabilityThreshold = 1e-4;
  // Consecutive sub-threshold updates needed to declare a stable region.
  static constexpr int kStableUpdates = 10;

  virtual ~KinematicController() = default;

  void set_control_objective(ControlObjective objective);
  std::optional<ControlObjective> control_objective() const { return objective_; }
  bool is_set() const { return objective_.has_value(); }

  void set_gain(double gain);
  void set_damping(double damping);
  void set_stability_threshold(double threshold);
  // Primitive attached to the effector: a pose offset for kPose, a line for
  // kLine, a plane for kPlane. Identity selects the effector z-axis for the
  // line and plane objectives.
  void set_primitive_to_effector(const DualQuaternion& primitive);
  // Target point for kDistance (default origin) or plane for kDistanceToPlane.
  void set_target_primitive(const DualQuaternion& target);

  double gain() const { return gain_; }
  double damping() const { return damping_; }
  double stability_threshold() const { return stability_threshold_; }
  const DualQuaternion& primitive_to_effector() const { return primitive_; }
  const Kinematics& robot() const { return *robot_; }

  VectorXd task_variable(const VectorXd& q) const;
  MatrixXd jacobian(const VectorXd& q) const;

  VectorXd compute_setpoint_control_signal(const VectorXd& q, const VectorXd& task_reference);
  virtual VectorXd compute_tracking_control_signal(const VectorXd& q,
                                                   const VectorXd& task_reference,
                                                   const VectorXd& task_feedforward) = 0;

  // Feeds one task error into the stability tracker; returns the new state.
  bool verify_stability(const VectorXd& task_error);
  bool system_reached_stable_region() const;
  void reset_stability_counter();
  double last_error_norm() const { return last_error_norm_; }
  const VectorXd& last_error() const { return last_error_; }

 protected:
  explicit KinematicController(std::shared_ptr<const Kinematics> robot);

  // Validates sizes and returns x(q) - xd; throws NotSetError if unset.
  VectorXd task_error(const VectorXd& q, const VectorXd& task_reference,
                      const VectorXd& task_feedforward) const;

 private:
  ControlObjective require_objective() const;

  std::shared_ptr<const Kinematics> robot_;
  std::optional<ControlObjective> objective_;
  double gain_ = 1.0;
  double damping_ = kDefaultDamping;
  double stability_threshold_ = kDefaultStabilityThreshold;
  DualQuaternion primitive_ = 1.0;
  std::optional<DualQuaternion> target_;

  int stable_count_ = 0;
  bool has_error_ = false;
  double last_error_norm_ = 0.0;
  VectorXd last_error_;
};

// u = J+ (-gain (x - xd) + xd_dot)
class PseudoinverseController : public KinematicController {
 public:
  explicit PseudoinverseController(std::shared_ptr<const Kinematics> robot);
  VectorXd compute_tracking_control_signal(const VectorXd& q, const VectorXd& task_reference,
                                           const VectorXd& task_feedforward) override;
};

// u = argmin (1/2) u'Hu + h'u  s.t.  A u <= a, B u = b.
class TaskspaceQuadraticProgrammingController : public KinematicController {
 public:
  // Each call replaces the previously stored block.
  void set_inequality_constraint(const MatrixXd& A, const VectorXd& a);
  void set_equality_constraint(const MatrixXd& B, const VectorXd& b);
  void clear_constraints();

  virtual MatrixXd compute_objective_function_symmetric_matrix(const MatrixXd& jacobian,
                                                               const VectorXd& task_error) const = 0;
  virtual VectorXd compute_objective_function_linear_component(
      const MatrixXd& jacobian, const VectorXd& task_error,
      const VectorXd& task_feedforward) const = 0;

  QPProblem assemble(const VectorXd& q, const VectorXd& task_reference,
                     const VectorXd& task_feedforward) const;
  VectorXd compute_tracking_control_signal(const VectorXd& q, const VectorXd& task_reference,
                                           const VectorXd& task_feedforward) override;

  const MatrixXd& inequality_matrix() const { return A_; }
  const VectorXd& inequality_vector() const { return a_; }

 protected:
  explicit TaskspaceQuadraticProgrammingController(std::shared_ptr<const Kinematics> robot);

 private:
  MatrixXd A_, B_;
  VectorXd a_, b_;
};

// (1/2) u'Hu + h'u = |J u + gain (x - xd) - xd_dot|^2 + damping^2 |u|^2 + const
class ClassicQPController : public TaskspaceQuadraticProgrammingController {
 public:
  explicit ClassicQPController(std::shared_ptr<const Kinematics> robot);

  MatrixXd compute_objective_function_symmetric_matrix(const MatrixXd& jacobian,
                                                       const VectorXd& task_error) const override;
  VectorXd compute_objective_function_linear_component(
      const MatrixXd& jacobian, const VectorXd& task_error,
      const VectorXd& task_feedforward) const override;
};

}  // namespace dqkit

#endif  // DQKIT_CONTROL_HPP_
