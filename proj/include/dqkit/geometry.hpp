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

// Points, lines and planes encoded as dual quaternions, and distances
// between them.
//
//   point  p = x i + y j + z k
//   line   l = l_dir + E m,  m = s x l_dir for any point s on the line
//   plane  pi = n + E d,     d = <p, n> for any point p on the plane
//
// Point distances are squared; point-to-plane distance is signed. Both
// conventions match the distance Jacobians in kinematics.hpp.

#ifndef DQKIT_GEOMETRY_HPP_
#define DQKIT_GEOMETRY_HPP_

#include "dqkit/dual_quaternion.hpp"

namespace dqkit {

inline constexpr double kPrimitiveTolerance = 1e-9;

class Line {
 public:
  // Validates the unit direction and the Pluecker condition <l, m> = 0.
  static Line from_dual_quaternion(const DualQuaternion& l);

  const DualQuaternion& dq() const { return l_; }
  DualQuaternion direction() const { return P(l_); }
  DualQuaternion moment() const { return D(l_); }
  // Point of the line closest to the origin.
  DualQuaternion closest_point_to_origin() const;

 private:
  friend Line make_line(const DualQuaternion&, const DualQuaternion&);
  explicit Line(const DualQuaternion& l) : l_(l) {}
  DualQuaternion l_;
};

class Plane {
 public:
  static Plane from_dual_quaternion(const DualQuaternion& pi);

  const DualQuaternion& dq() const { return pi_; }
  DualQuaternion normal() const { return P(pi_); }
  double offset() const { return pi_[4]; }

 private:
  friend Plane make_plane(const DualQuaternion&, const DualQuaternion&);
  explicit Plane(const DualQuaternion& pi) : pi_(pi) {}
  DualQuaternion pi_;
};

// Throws DomainError unless p is a pure quaternion.
void require_point(const DualQuaternion& p);

Plane make_plane(const DualQuaternion& normal, const DualQuaternion& point_on_plane);
Line make_line(const DualQuaternion& direction, const DualQuaternion& point_on_line);

double point_to_point_squared_distance(const DualQuaternion& p, const DualQuaternion& q);
// <p, n> - d; positive on the side the normal points to.
double point_to_plane_distance(const DualQuaternion& p, const Plane& plane);
double point_to_line_squared_distance(const DualQuaternion& p, const Line& line);
// Common-normal distance; parallel lines fall back to the point-to-line
// distance from a point of l1.
double line_to_line_distance(const Line& l1, const Line& l2);

// Rigid change of frame for each primitive kind.
DualQuaternion transform_point(const DualQuaternion& x, const DualQuaternion& p);
Line transform_line(const DualQuaternion& x, const Line& line);
Plane transform_plane(const DualQuaternion& x, const Plane& plane);

}  // namespace dqkit

#endif  // DQKIT_GEOMETRY_HPP_
