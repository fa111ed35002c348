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

#include "dqkit/errors.hpp"
#include "dqkit/kinematics.hpp"

namespace dqkit {

MobileBase MobileBase::holonomic() { return MobileBase(MobileBaseKind::kHolonomic); }

MobileBase MobileBase::differential(double wheel_radius, double axis_length) {
  if (!(wheel_radius > 0.0) || !(axis_length > 0.0)) {
    throw DomainError("differential base needs positive wheel radius and axis length");
  }
  MobileBase base(MobileBaseKind::kDifferential);
  base.wheel_radius_ = wheel_radius;
  base.axis_length_ = axis_length;
  return base;
}

void MobileBase::set_frame_displacement(const DualQuaternion& displacement) {
  if (!is_unit(displacement)) {
    throw DomainError("frame displacement must be a unit dual quaternion");
  }
  frame_displacement_ = displacement;
}

void MobileBase::set_base_diameter(double diameter) {
  if (!(diameter >= 0.0)) throw DomainError("base diameter must be nonnegative");
  base_diameter_ = diameter;
}

DualQuaternion MobileBase::fkm(const VectorXd& q) const {
  check_configuration(q);
  const DualQuaternion r{std::cos(0.5 * q(2)), 0, 0, std::sin(0.5 * q(2))};
  const DualQuaternion p{0, q(0), q(1), 0};
  return frame_prefix() * make_pose(r, p) * frame_displacement_;
}

MatrixXd MobileBase::pose_jacobian(const VectorXd& q) const {
  check_configuration(q);
  const DualQuaternion r{std::cos(0.5 * q(2)), 0, 0, std::sin(0.5 * q(2))};
  const DualQuaternion p{0, q(0), q(1), 0};
  const DualQuaternion prefix = frame_prefix();
  // x = F (r + E p r / 2) X
  const DualQuaternion dr = 0.5 * k_ * r;
  const DualQuaternion dx = E_ * 0.5 * i_ * r;
  const DualQuaternion dy = E_ * 0.5 * j_ * r;
  const DualQuaternion dphi = dr + E_ * 0.5 * p * dr;

  MatrixXd jac(8, 3);
  jac.col(0) = vec8(prefix * dx * frame_displacement_);
  jac.col(1) = vec8(prefix * dy * frame_displacement_);
  jac.col(2) = vec8(prefix * dphi * frame_displacement_);
  return jac;
}

MatrixXd MobileBase::constraint_jacobian(double phi) const {
  if (kind_ == MobileBaseKind::kHolonomic) return MatrixXd::Identity(3, 3);
  const double half_r = 0.5 * wheel_radius_;
  MatrixXd c(3, 2);
  c << half_r * std::cos(phi), half_r * std::cos(phi),
       half_r * std::sin(phi), half_r * std::sin(phi),
       wheel_radius_ / axis_length_, -wheel_radius_ / axis_length_;
  return c;
}

MatrixXd MobileBase::wheel_pose_jacobian(const VectorXd& q) const {
  return pose_jacobian(q) * constraint_jacobian(q(2));
}

}  // namespace dqkit
