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

#include <cmath>
#include <string>

#include "dqkit/errors.hpp"
#include "dqkit/kinematics.hpp"

namespace dqkit {
namespace {

constexpr double kParallelTolerance = 1e-9;

void require_rows(const MatrixXd& jac, int rows, const char* what) {
  if (jac.rows() != rows) {
    throw DimensionError(std::string(what) + " expects a Jacobian with " +
                         std::to_string(rows) + " rows, got " + std::to_string(jac.rows()));
  }
}

// vec4(a x b) = cross_left(a) vec4(b)
Matrix4d cross_left(const DualQuaternion& a) {
  return 0.5 * (hamiplus4(P(a)) - haminus4(P(a)));
}

// vec4(a x b) = cross_right(b) vec4(a)
Matrix4d cross_right(const DualQuaternion& b) {
  return 0.5 * (haminus4(P(b)) - hamiplus4(P(b)));
}

double inner3(const DualQuaternion& a, const DualQuaternion& b) {
  return a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

}  // namespace

MatrixXd rotation_jacobian(const MatrixXd& pose_jacobian) {
  require_rows(pose_jacobian, 8, "rotation_jacobian");
  return pose_jacobian.topRows(4);
}

MatrixXd translation_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x) {
  require_rows(pose_jacobian, 8, "translation_jacobian");
  if (!is_unit(x)) throw DomainError("translation_jacobian requires a unit pose");
  // p = 2 D(x) P(x)*  =>  p_dot = 2 (D_dot P* + D P_dot*)
  return 2.0 * (haminus4(conj(P(x))) * pose_jacobian.bottomRows(4) +
                hamiplus4(D(x)) * conj_matrix4() * pose_jacobian.topRows(4));
}

MatrixXd line_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x,
                       const Line& line_body) {
  require_rows(pose_jacobian, 8, "line_jacobian");
  if (!is_unit(x)) throw DomainError("line_jacobian requires a unit pose");
  const DualQuaternion& l = line_body.dq();
  // d/dt (x l x*) = x_dot l x* + x l x_dot*
  return (haminus8(l * conj(x)) + hamiplus8(x * l) * conj_matrix8()) * pose_jacobian;
}

MatrixXd plane_jacobian(const MatrixXd& pose_jacobian, const DualQuaternion& x,
                        const Plane& plane_body) {
  require_rows(pose_jacobian, 8, "plane_jacobian");
  if (!is_unit(x)) throw DomainError("plane_jacobian requires a unit pose");
  const DualQuaternion& pi = plane_body.dq();
  // d/dt (sharp(x) pi x*) = sharp(x_dot) pi x* + sharp(x) pi x_dot*
  return (haminus8(pi * conj(x)) * sharp_matrix8() +
          hamiplus8(sharp(x) * pi) * conj_matrix8()) *
         pose_jacobian;
}

RowVectorXd point_to_point_distance_jacobian(const MatrixXd& translation_jacobian,
                                             const DualQuaternion& robot_point,
                                             const DualQuaternion& workspace_point) {
  require_rows(translation_jacobian, 4, "point_to_point_distance_jacobian");
  require_point(robot_point);
  require_point(workspace_point);
  return 2.0 * vec4(robot_point - workspace_point).transpose() * translation_jacobian;
}

RowVectorXd point_to_line_distance_jacobian(const MatrixXd& translation_jacobian,
                                            const DualQuaternion& robot_point,
                                            const Line& workspace_line) {
  require_rows(translation_jacobian, 4, "point_to_line_distance_jacobian");
  require_point(robot_point);
  const DualQuaternion l = workspace_line.direction();
  const DualQuaternion v = cross(robot_point, l) - workspace_line.moment();
  // d/dt |p x l - m|^2 = 2 <v, p_dot x l>
  return 2.0 * vec4(v).transpose() * cross_right(l) * translation_jacobian;
}

RowVectorXd point_to_plane_distance_jacobian(const MatrixXd& translation_jacobian,
                                             const DualQuaternion& robot_point,
                                             const Plane& workspace_plane) {
  require_rows(translation_jacobian, 4, "point_to_plane_distance_jacobian");
  require_point(robot_point);
  return vec4(workspace_plane.normal()).transpose() * translation_jacobian;
}

RowVectorXd line_to_point_distance_jacobian(const MatrixXd& line_jacobian,
                                            const Line& robot_line,
                                            const DualQuaternion& workspace_point) {
  require_rows(line_jacobian, 8, "line_to_point_distance_jacobian");
  require_point(workspace_point);
  const DualQuaternion v =
      cross(workspace_point, robot_line.direction()) - robot_line.moment();
  // d/dt |p x l - m|^2 = 2 <v, p x l_dot - m_dot>
  const MatrixXd dv = cross_left(workspace_point) * line_jacobian.topRows(4) -
                      line_jacobian.bottomRows(4);
  return 2.0 * vec4(v).transpose() * dv;
}

RowVectorXd line_to_line_distance_jacobian(const MatrixXd& line_jacobian,
                                           const Line& robot_line,
                                           const Line& workspace_line) {
  require_rows(line_jacobian, 8, "line_to_line_distance_jacobian");
  const DualQuaternion l1 = robot_line.direction();
  const DualQuaternion m1 = robot_line.moment();
  const DualQuaternion l2 = workspace_line.direction();
  const DualQuaternion m2 = workspace_line.moment();
  const MatrixXd dl1 = line_jacobian.topRows(4);
  const MatrixXd dm1 = line_jacobian.bottomRows(4);

  const DualQuaternion c = cross(l1, l2);
  const double c_norm = std::sqrt(inner3(c, c));
  if (c_norm < kParallelTolerance) {
    // Parallel fallback: distance from s1 = l1 x m1 to the workspace line.
    const DualQuaternion s1 = cross(l1, m1);
    const DualQuaternion v = cross(s1, l2) - m2;
    const double dist = std::sqrt(inner3(v, v));
    if (dist == 0.0) return RowVectorXd::Zero(line_jacobian.cols());
    const MatrixXd ds1 = cross_right(m1) * dl1 + cross_left(l1) * dm1;
    return vec4(v).transpose() * cross_right(l2) * ds1 / dist;
  }

  // d = |r| / |c| with r = <l1, m2> + <l2, m1>, c = l1 x l2.
  const double r = inner3(l1, m2) + inner3(l2, m1);
  const RowVectorXd dr = vec4(m2).transpose() * dl1 + vec4(l2).transpose() * dm1;
  const RowVectorXd dc_norm = vec4(c).transpose() * cross_right(l2) * dl1 / c_norm;
  const double sign = (r >= 0.0) ? 1.0 : -1.0;
  return sign * dr / c_norm - std::abs(r) * dc_norm / (c_norm * c_norm);
}

RowVectorXd plane_to_point_distance_jacobian(const MatrixXd& plane_jacobian,
                                             const Plane& robot_plane,
                                             const DualQuaternion& workspace_point) {
  require_rows(plane_jacobian, 8, "plane_to_point_distance_jacobian");
  require_point(workspace_point);
  (void)robot_plane;  // the distance is linear in the plane coefficients
  // d/dt (<p, n> - d)
  return vec4(workspace_point).transpose() * plane_jacobian.topRows(4) -
         plane_jacobian.row(4);
}

DualQuaternion relative_pose(const DualQuaternion& x1, const DualQuaternion& x2) {
  if (!is_unit(x1) || !is_unit(x2)) throw DomainError("relative_pose requires unit poses");
  return conj(x2) * x1;
}

DualQuaternion absolute_pose(const DualQuaternion& x1, const DualQuaternion& x2) {
  return x2 * pow(relative_pose(x1, x2), 0.5);
}

MatrixXd relative_pose_jacobian(const MatrixXd& j1, const MatrixXd& j2,
                                const DualQuaternion& x1, const DualQuaternion& x2) {
  require_rows(j1, 8, "relative_pose_jacobian");
  require_rows(j2, 8, "relative_pose_jacobian");
  if (!is_unit(x1) || !is_unit(x2)) {
    throw DomainError("relative_pose_jacobian requires unit poses");
  }
  MatrixXd jac(8, j1.cols() + j2.cols());
  jac.leftCols(j1.cols()) = hamiplus8(conj(x2)) * j1;
  jac.rightCols(j2.cols()) = haminus8(x1) * conj_matrix8() * j2;
  return jac;
}

MatrixXd absolute_pose_jacobian(const MatrixXd& j1, const MatrixXd& j2,
                                const DualQuaternion& x1, const DualQuaternion& x2) {
  const MatrixXd jr = relative_pose_jacobian(j1, j2, x1, x2);
  const DualQuaternion half = pow(relative_pose(x1, x2), 0.5);
  // half * half = x_r, so (H-(half) + H+(half)) vec8(half_dot) = vec8(x_r_dot).
  const Matrix8d sym = haminus8(half) + hamiplus8(half);
  const MatrixXd j_half = sym.partialPivLu().solve(jr);

  MatrixXd jac = hamiplus8(x2) * j_half;
  jac.rightCols(j2.cols()) += haminus8(half) * j2;
  return jac;
}

CooperativeDualTaskSpace::CooperativeDualTaskSpace(std::shared_ptr<const Kinematics> robot1,
                                                   std::shared_ptr<const Kinematics> robot2)
    : robot1_(std::move(robot1)), robot2_(std::move(robot2)) {
  if (!robot1_ || !robot2_) throw DomainError("cooperative task space needs two robots");
}

VectorXd CooperativeDualTaskSpace::q1(const VectorXd& q) const {
  if (q.size() != dof()) throw DimensionError("cooperative configuration size mismatch");
  return q.head(robot1_->dof());
}

VectorXd CooperativeDualTaskSpace::q2(const VectorXd& q) const {
  if (q.size() != dof()) throw DimensionError("cooperative configuration size mismatch");
  return q.tail(robot2_->dof());
}

DualQuaternion CooperativeDualTaskSpace::pose1(const VectorXd& q) const {
  return robot1_->fkm(q1(q));
}

DualQuaternion CooperativeDualTaskSpace::pose2(const VectorXd& q) const {
  return robot2_->fkm(q2(q));
}

MatrixXd CooperativeDualTaskSpace::pose_jacobian1(const VectorXd& q) const {
  return robot1_->pose_jacobian(q1(q));
}

MatrixXd CooperativeDualTaskSpace::pose_jacobian2(const VectorXd& q) const {
  return robot2_->pose_jacobian(q2(q));
}

DualQuaternion CooperativeDualTaskSpace::relative_pose(const VectorXd& q) const {
  return dqkit::relative_pose(pose1(q), pose2(q));
}

DualQuaternion CooperativeDualTaskSpace::absolute_pose(const VectorXd& q) const {
  return dqkit::absolute_pose(pose1(q), pose2(q));
}

MatrixXd CooperativeDualTaskSpace::relative_pose_jacobian(const VectorXd& q) const {
  return dqkit::relative_pose_jacobian(pose_jacobian1(q), pose_jacobian2(q), pose1(q),
                                       pose2(q));
}

MatrixXd CooperativeDualTaskSpace::absolute_pose_jacobian(const VectorXd& q) const {
  return dqkit::absolute_pose_jacobian(pose_jacobian1(q), pose_jacobian2(q), pose1(q),
                                       pose2(q));
}

}  // namespace dqkit
