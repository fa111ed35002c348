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

void Kinematics::set_reference_frame(const DualQuaternion& frame) {
  if (!is_unit(frame)) throw DomainError("reference frame must be a unit dual quaternion");
  reference_frame_ = frame;
}

void Kinematics::set_base_frame(const DualQuaternion& frame) {
  if (!is_unit(frame)) throw DomainError("base frame must be a unit dual quaternion");
  base_frame_ = frame;
}

void Kinematics::check_configuration(const VectorXd& q) const {
  if (q.size() != dof()) {
    throw DimensionError("configuration has " + std::to_string(q.size()) +
                         " entries, chain has " + std::to_string(dof()) + " DOF");
  }
}

void DHParameters::validate() const {
  if (theta.empty()) throw DomainError("DH table has no joints");
  if (d.size() != theta.size() || a.size() != theta.size() || alpha.size() != theta.size()) {
    throw DomainError("DH table rows have different lengths");
  }
  for (const auto* row : {&theta, &d, &a, &alpha}) {
    for (double v : *row) {
      if (!std::isfinite(v)) throw DomainError("DH table contains a non-finite value");
    }
  }
}

DualQuaternion dh_joint_transform(double theta, double d, double a, double alpha) {
  const double ct = std::cos(0.5 * theta);
  const double st = std::sin(0.5 * theta);
  const double ca = std::cos(0.5 * alpha);
  const double sa = std::sin(0.5 * alpha);
  const DualQuaternion rz{ct, 0, 0, st};
  const DualQuaternion tz{1, 0, 0, 0, 0, 0, 0, 0.5 * d};
  const DualQuaternion tx{1, 0, 0, 0, 0, 0.5 * a, 0, 0};
  const DualQuaternion rx{ca, sa, 0, 0};
  return rz * tz * tx * rx;
}

SerialManipulator::SerialManipulator(DHParameters dh) : dh_(std::move(dh)) {
  dh_.validate();
}

void SerialManipulator::set_effector(const DualQuaternion& effector) {
  if (!is_unit(effector)) throw DomainError("effector must be a unit dual quaternion");
  effector_ = effector;
}

std::vector<DualQuaternion> SerialManipulator::joint_poses(const VectorXd& q) const {
  check_configuration(q);
  std::vector<DualQuaternion> poses;
  poses.reserve(dh_.size());
  for (int j = 0; j < dh_.size(); ++j) {
    poses.push_back(dh_joint_transform(dh_.theta[j] + q(j), dh_.d[j], dh_.a[j], dh_.alpha[j]));
  }
  return poses;
}

DualQuaternion SerialManipulator::fkm(const VectorXd& q) const {
  return fkm(q, dof() - 1);
}

DualQuaternion SerialManipulator::fkm(const VectorXd& q, int ith_link) const {
  if (ith_link < 0 || ith_link >= dof()) {
    throw DimensionError("link index " + std::to_string(ith_link) + " out of range");
  }
  const auto poses = joint_poses(q);
  DualQuaternion x = frame_prefix();
  for (int j = 0; j <= ith_link; ++j) x = x * poses[j];
  if (ith_link == dof() - 1) x = x * effector_;
  return x;
}

MatrixXd SerialManipulator::pose_jacobian(const VectorXd& q) const {
  const auto poses = joint_poses(q);
  const int n = dof();
  // prefix[j] = F A_0 ... A_{j-1}; suffix[j] = A_{j+1} ... A_{n-1} E
  std::vector<DualQuaternion> prefix(n), suffix(n);
  prefix[0] = frame_prefix();
  for (int j = 1; j < n; ++j) prefix[j] = prefix[j - 1] * poses[j - 1];
  suffix[n - 1] = effector_;
  for (int j = n - 2; j >= 0; --j) suffix[j] = poses[j + 1] * suffix[j + 1];

  // d/dq_j rot_z(theta_j + q_j) = (1/2) k rot_z, so dA_j/dq_j = (1/2) k A_j.
  MatrixXd jac(8, n);
  for (int j = 0; j < n; ++j) {
    jac.col(j) = vec8(prefix[j] * (0.5 * k_) * poses[j] * suffix[j]);
  }
  return jac;
}

MatrixXd SerialManipulator::pose_jacobian_derivative(const VectorXd& q,
                                                     const VectorXd& q_dot) const {
  check_configuration(q_dot);
  const auto poses = joint_poses(q);
  const int n = dof();
  const DualQuaternion half_k = 0.5 * k_;

  // Factor i differentiated `order` times: A, (1/2)k A, -(1/4) A.
  const auto factor = [&](int i, int order) -> DualQuaternion {
    switch (order) {
      case 0: return poses[i];
      case 1: return half_k * poses[i];
      default: return -0.25 * poses[i];
    }
  };

  MatrixXd jac_dot = MatrixXd::Zero(8, n);
  for (int j = 0; j < n; ++j) {
    Vector8d col = Vector8d::Zero();
    for (int k = 0; k < n; ++k) {
      if (q_dot(k) == 0.0) continue;
      DualQuaternion x = frame_prefix();
      for (int i = 0; i < n; ++i) {
        const int order = (i == j) + (i == k);
        x = x * factor(i, order);
      }
      x = x * effector_;
      col += q_dot(k) * vec8(x);
    }
    jac_dot.col(j) = col;
  }
  return jac_dot;
}

}  // namespace dqkit
