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

// Forward kinematics and analytic Jacobians.
//
// Every chain maps a configuration vector q to a unit dual quaternion pose
//
//   fkm(q) = reference_frame * base_frame * raw_fkm(q) [* effector]
//
// and pose_jacobian(q) satisfies vec8(d/dt fkm(q)) = J q_dot. The remaining
// Jacobians are free functions that post-process a pose Jacobian into the
// Jacobian of a rotation, translation, attached primitive or distance.

#ifndef DQKIT_KINEMATICS_HPP_
#define DQKIT_KINEMATICS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "dqkit/dual_quaternion.hpp"
#include "dqkit/geometry.hpp"

namespace dqkit {

using Eigen::RowVectorXd;

class Kinematics {
 public:
  virtual ~Kinematics() = default;

  virtual int dof() const = 0;
  virtual DualQuaternion fkm(const VectorXd& q) const = 0;
  virtual MatrixXd pose_jacobian(const VectorXd& q) const = 0;

  void set_reference_frame(const DualQuaternion& frame);
  void set_base_frame(const DualQuaternion& frame);
  const DualQuaternion& reference_frame() const { return reference_frame_; }
  const DualQuaternion& base_frame() const { return base_frame_; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 protected:
  Kinematics() = default;
  Kinematics(const Kinematics&) = default;
  Kinematics& operator=(const Kinematics&) = default;

  // reference_frame * base_frame
  DualQuaternion frame_prefix() const { return reference_frame_ * base_frame_; }
  void check_configuration(const VectorXd& q) const;

 private:
  DualQuaternion reference_frame_ = 1.0;
  DualQuaternion base_frame_ = 1.0;
  std::string name_;
};

// Standard Denavit-Hartenberg table, one entry per revolute joint.
struct DHParameters {
  std::vector<double> theta;  // rad, added to the joint value
  std::vector<double> d;      // m
  std::vector<double> a;      // m
  std::vector<double> alpha;  // rad

  int size() const { return static_cast<int>(theta.size()); }
  // Throws DomainError on ragged or non-finite tables, or zero joints.
  void validate() const;
};

// rot_z(theta) * trans_z(d) * trans_x(a) * rot_x(alpha)
DualQuaternion dh_joint_transform(double theta, double d, double a, double alpha);

class SerialManipulator : public Kinematics {
 public:
  explicit SerialManipulator(DHParameters dh);

  int dof() const override { return dh_.size(); }
  DualQuaternion fkm(const VectorXd& q) const override;
  // Pose of the frame after joint `ith_link` (zero-based). The effector is
  // applied only for the last link.
  DualQuaternion fkm(const VectorXd& q, int ith_link) const;
  MatrixXd pose_jacobian(const VectorXd& q) const override;
  // d/dt pose_jacobian(q(t)) for q_dot = dq/dt.
  MatrixXd pose_jacobian_derivative(const VectorXd& q, const VectorXd& q_dot) const;

  void set_effector(const DualQuaternion& effector);
  const DualQuaternion& effector() const { return effector_; }
  const DHParameters& dh() const { return dh_; }

 private:
  std::vector<DualQuaternion> joint_poses(const VectorXd& q) const;

  DHParameters dh_;
  DualQuaternion effector_ = 1.0;
};

enum class MobileBaseKind { kHolonomic, kDifferential };

// Planar base with configuration (x, y, phi).
class MobileBase : public Kinematics {
 public:
  static MobileBase holonomic();
  static MobileBase differential(double wheel_radius, double axis_length);

  int dof() const override { return 3; }
  DualQuaternion fkm(const VectorXd& q) const override;
  MatrixXd pose_jacobian(const VectorXd& q) const override;

  // Maps wheel velocities (w_right, w_left) to (x_dot, y_dot, phi_dot). The
  // holonomic base returns the 3x3 identity.
  MatrixXd constraint_jacobian(double phi) const;
  // pose_jacobian(q) * constraint_jacobian(phi): wheel velocities to pose rate.
  MatrixXd wheel_pose_jacobian(const VectorXd& q) const;

  void set_frame_displacement(const DualQuaternion& displacement);
  void set_base_diameter(double diameter);

  MobileBaseKind kind() const { return kind_; }
  const DualQuaternion& frame_displacement() const { return frame_displacement_; }
  double base_diameter() const { return base_diameter_; }
  double wheel_radius() const { return wheel_radius_; }
  double axis_length() const { return axis_length_; }

 private:
  explicit MobileBase(MobileBaseKind kind) : kind_(kind) {}

  MobileBaseKind kind_;
  DualQuaternion frame_displacement_ = 1.0;
  double base_diameter_ = 0.0;
  double wheel_radius_ = 0.0;
  double axis_length_ = 0.0;
};

// Serial composition of sub-chains. A reversed sub-chain contributes
// conj(fkm) of its own configuration block.
class WholeBody : public Kinematics {
 public:
  explicit WholeBody(std::shared_ptr<const Kinematics> first);

  void add(std::shared_ptr<const Kinematics> chain);
  void add_reversed(std::shared_ptr<const Kinematics> chain);

  int dof() const override;
  DualQuaternion fkm(const VectorXd& q) const override;
  // Pose at the end of sub-chain `ith_chain` (zero-based).
  DualQuaternion fkm(const VectorXd& q, int ith_chain) const;
  MatrixXd pose_jacobian(const VectorXd& q) const override;
  // 8 x dof(); columns of chains after `ith_chain` are zero.
  MatrixXd pose_jacobian(const VectorXd& q, int ith_chain) const;

  // Traversal-ordered configuration to per-chain native ordering: blocks of
  // reversed chains are reversed, others copied.
  VectorXd sequential(const VectorXd& q) const;

  int chain_count() const { return static_cast<int>(chains_.size()); }
  const Kinematics& chain(int i) const { return *chains_.at(i).chain; }
  std::shared_ptr<const Kinematics> chain_ptr(int i) const { return chains_.at(i).chain; }
  bool is_reversed(int i) const { return chains_.at(i).reversed; }
  // Offset of chain i's block within the configuration vector.
  int chain_offset(int i) const;

 private:
  struct Element {
    std::shared_ptr<const Kinematics> chain;
    bool reversed;
  };
  std::vector<DualQuaternion> chain_poses(const VectorXd& q, int count) const;

  std::vector<Element> chains_;
};

// --- Jacobians derived from a pose Jacobian ------------------------------------

// First four rows of an 8 x n pose Jacobian.
MatrixXd rotation_jacobian(const MatrixXd& pose_jacobian);
// 4 x n Jacobian with vec4(d/dt translation(x)) = Jp q_dot.
MatrixXd translation_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x);
// Jacobian of Ad(x) line_body, the body-frame line expressed in the workspace.
MatrixXd line_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x,
                       const Line& line_body);
// Jacobian of Adsharp(x) plane_body.
MatrixXd plane_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x,
                        const Plane& plane_body);

// --- distance Jacobians ----------------------------------------------------------
//
// Each returns a 1 x n row J_d with d/dt dist = J_d q_dot, for the matching
// function in geometry.hpp. The first argument is the Jacobian of the robot
// primitive: translation Jacobian for points, line Jacobian for lines and
// plane Jacobian for planes.

RowVectorXd point_to_point_distance_jacobian(const MatrixXd& translation_jacobian,
                                             const DualQuaternion& robot_point,
                                             const DualQuaternion& workspace_point);
RowVectorXd point_to_line_distance_jacobian(const MatrixXd& translation_jacobian,
                                            const DualQuaternion& robot_point,
                                            const Line& workspace_line);
RowVectorXd point_to_plane_distance_jacobian(const MatrixXd& translation_jacobian,
                                             const DualQuaternion& robot_point,
                                             const Plane& workspace_plane);
RowVectorXd line_to_point_distance_jacobian(const MatrixXd& line_jacobian,
                                            const Line& robot_line,
                                            const DualQuaternion& workspace_point);
RowVectorXd line_to_line_distance_jacobian(const MatrixXd& line_jacobian,
                                           const Line& robot_line,
                                           const Line& workspace_line);
RowVectorXd plane_to_point_distance_jacobian(const MatrixXd& plane_jacobian,
                                             const Plane& robot_plane,
                                             const DualQuaternion& workspace_point);

// --- cooperative dual task space -----------------------------------------------------

// conj(x2) x1
DualQuaternion relative_pose(const DualQuaternion& x1, const DualQuaternion& x2);
// x2 pow(relative_pose, 1/2)
DualQuaternion absolute_pose(const DualQuaternion& x1, const DualQuaternion& x2);
// 8 x (n1 + n2) Jacobians with respect to (q1; q2).
MatrixXd relative_pose_jacobian(const MatrixXd& j1, const MatrixXd& j2,
                                const DualQuaternion& x1, const DualQuaternion& x2);
MatrixXd absolute_pose_jacobian(const MatrixXd& j1, const MatrixXd& j2,
                                const DualQuaternion& x1, const DualQuaternion& x2);

// Two arms sharing one configuration vector q = (q1; q2).
class CooperativeDualTaskSpace {
 public:
  CooperativeDualTaskSpace(std::shared_ptr<const Kinematics> robot1,
                           std::shared_ptr<const Kinematics> robot2);

  int dof() const { return robot1_->dof() + robot2_->dof(); }
  DualQuaternion pose1(const VectorXd& q) const;
  DualQuaternion pose2(const VectorXd& q) const;
  MatrixXd pose_jacobian1(const VectorXd& q) const;
  MatrixXd pose_jacobian2(const VectorXd& q) const;
  DualQuaternion relative_pose(const VectorXd& q) const;
  DualQuaternion absolute_pose(const VectorXd& q) const;
  MatrixXd relative_pose_jacobian(const VectorXd& q) const;
  MatrixXd absolute_pose_jacobian(const VectorXd& q) const;

 private:
  VectorXd q1(const VectorXd& q) const;
  VectorXd q2(const VectorXd& q) const;

  std::shared_ptr<const Kinematics> robot1_;
  std::shared_ptr<const Kinematics> robot2_;
};

}  // namespace dqkit

#endif  // DQKIT_KINEMATICS_HPP_
