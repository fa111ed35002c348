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

#include "dqkit/geometry.hpp"

#include <cmath>

#include "dqkit/errors.hpp"

namespace dqkit {
namespace {

constexpr double kParallelTolerance = 1e-9;

double inner(const DualQuaternion& a, const DualQuaternion& b) {
  return a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double imaginary_norm(const DualQuaternion& a) { return std::sqrt(inner(a, a)); }

DualQuaternion pure_part(const DualQuaternion& a) { return {0, a[1], a[2], a[3]}; }

}  // namespace

Line Line::from_dual_quaternion(const DualQuaternion& l) {
  const DualQuaternion dir = P(l);
  const DualQuaternion m = D(l);
  if (std::abs(l[0]) > kPrimitiveTolerance || std::abs(l[4]) > kPrimitiveTolerance) {
    throw DomainError("line must have zero real parts: " + to_string(l));
  }
  if (std::abs(imaginary_norm(dir) - 1.0) > kPrimitiveTolerance) {
    throw DomainError("line direction must be unit: " + to_string(l));
  }
  if (std::abs(inner(dir, m)) > kPrimitiveTolerance) {
    throw DomainError("line violates the Pluecker condition: " + to_string(l));
  }
  return Line(l);
}

DualQuaternion Line::closest_point_to_origin() const {
  return pure_part(cross(direction(), moment()));
}

Plane Plane::from_dual_quaternion(const DualQuaternion& pi) {
  if (std::abs(pi[0]) > kPrimitiveTolerance) {
    throw DomainError("plane normal must be a pure quaternion: " + to_string(pi));
  }
  if (std::abs(imaginary_norm(P(pi)) - 1.0) > kPrimitiveTolerance) {
    throw DomainError("plane normal must be unit: " + to_string(pi));
  }
  if (std::abs(pi[5]) > kPrimitiveTolerance || std::abs(pi[6]) > kPrimitiveTolerance ||
      std::abs(pi[7]) > kPrimitiveTolerance) {
    throw DomainError("plane dual part must be real: " + to_string(pi));
  }
  return Plane(pi);
}

void require_point(const DualQuaternion& p) {
  if (!is_pure_quaternion(p)) {
    throw DomainError("point must be a pure quaternion: " + to_string(p));
  }
}

Plane make_plane(const DualQuaternion& normal, const DualQuaternion& point_on_plane) {
  require_point(normal);
  require_point(point_on_plane);
  const double len = imaginary_norm(normal);
  if (len == 0.0) throw DomainError("plane normal must be nonzero");
  const DualQuaternion n = {0, normal[1] / len, normal[2] / len, normal[3] / len};
  return Plane(n + E_ * inner(point_on_plane, n));
}

Line make_line(const DualQuaternion& direction, const DualQuaternion& point_on_line) {
  require_point(direction);
  require_point(point_on_line);
  const double len = imaginary_norm(direction);
  if (len == 0.0) throw DomainError("line direction must be nonzero");
  const DualQuaternion l = {0, direction[1] / len, direction[2] / len, direction[3] / len};
  return Line(l + E_ * cross(point_on_line, l));
}

double point_to_point_squared_distance(const DualQuaternion& p, const DualQuaternion& q) {
  require_point(p);
  require_point(q);
  const DualQuaternion d = p - q;
  return inner(d, d);
}

double point_to_plane_distance(const DualQuaternion& p, const Plane& plane) {
  require_point(p);
  return inner(p, plane.normal()) - plane.offset();
}

double point_to_line_squared_distance(const DualQuaternion& p, const Line& line) {
  require_point(p);
  const DualQuaternion v = cross(p, line.direction()) - line.moment();
  return inner(v, v);
}

double line_to_line_distance(const Line& l1, const Line& l2) {
  const DualQuaternion c = cross(l1.direction(), l2.direction());
  const double c_norm = imaginary_norm(c);
  if (c_norm < kParallelTolerance) {
    return std::sqrt(point_to_line_squared_distance(l1.closest_point_to_origin(), l2));
  }
  const double reciprocal =
      inner(l1.direction(), l2.moment()) + inner(l2.direction(), l1.moment());
  return std::abs(reciprocal) / c_norm;
}

DualQuaternion transform_point(const DualQuaternion& x, const DualQuaternion& p) {
  require_point(p);
  const DualQuaternion r = rotation(x);
  return pure_part(translation(x) + r * p * conj(r));
}

Line transform_line(const DualQuaternion& x, const Line& line) {
  const DualQuaternion l = Ad(x, line.dq());
  return Line::from_dual_quaternion(pure_part(P(l)) + E_ * pure_part(D(l)));
}

Plane transform_plane(const DualQuaternion& x, const Plane& plane) {
  const DualQuaternion pi = Adsharp(x, plane.dq());
  return Plane::from_dual_quaternion(pure_part(P(pi)) + E_ * pi[4]);
}

}  // namespace dqkit
