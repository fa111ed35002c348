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

#include "dqkit/dual_quaternion.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "dqkit/errors.hpp"

namespace dqkit {
namespace {

constexpr double kRealPartTolerance = 1e-12;
constexpr double kSmallAngle = 1e-12;

double primary_norm_squared(const DualQuaternion& h) {
  return h[0] * h[0] + h[1] * h[1] + h[2] * h[2] + h[3] * h[3];
}

double primary_dual_inner(const DualQuaternion& h) {
  return h[0] * h[4] + h[1] * h[5] + h[2] * h[6] + h[3] * h[7];
}

DualQuaternion scale(const DualQuaternion& h, double s) {
  std::array<double, 8> c = h.coefficients();
  for (double& v : c) v *= s;
  return DualQuaternion(c);
}

void require_unit(const DualQuaternion& x, const char* what) {
  if (!is_unit(x)) {
    throw DomainError(std::string(what) + ": argument is not a unit dual quaternion: " +
                      to_string(x));
  }
}

// Appends one block "(a + bi + cj + dk)" in console style.
void append_block(std::string& out, const double* c) {
  static constexpr const char* kUnits[4] = {"", "i", "j", "k"};
  out += '(';
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (c[i] == 0.0) continue;
    const bool negative = std::signbit(c[i]);
    if (first) {
      if (negative) out += " - ";
    } else {
      out += negative ? " - " : " + ";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), std::fabs(c[i]));
    out.append(buf, res.ptr);
    out += kUnits[i];
    first = false;
  }
  out += ')';
}

}  // namespace

DualQuaternion DualQuaternion::from_vec(const Eigen::Ref<const VectorXd>& v) {
  if (v.size() == 4) return {v(0), v(1), v(2), v(3)};
  if (v.size() == 8) return {v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7)};
  throw DimensionError("from_vec expects 4 or 8 coefficients, got " +
                       std::to_string(v.size()));
}

DualQuaternion operator/(const DualQuaternion& a, const DualQuaternion& b) {
  return a * inv(b);
}

DualQuaternion left_divide(const DualQuaternion& a, const DualQuaternion& b) {
  return inv(a) * b;
}

bool is_unit(const DualQuaternion& h, double tol) {
  return std::abs(std::sqrt(primary_norm_squared(h)) - 1.0) <= tol &&
         std::abs(primary_dual_inner(h)) <= tol;
}

bool is_pure(const DualQuaternion& h) { return h[0] == 0.0 && h[4] == 0.0; }

bool is_real(const DualQuaternion& h) {
  return h[1] == 0.0 && h[2] == 0.0 && h[3] == 0.0 && h[5] == 0.0 &&
         h[6] == 0.0 && h[7] == 0.0;
}

bool is_quaternion(const DualQuaternion& h) {
  return h[4] == 0.0 && h[5] == 0.0 && h[6] == 0.0 && h[7] == 0.0;
}

bool is_pure_quaternion(const DualQuaternion& h) {
  return is_pure(h) && is_quaternion(h);
}

DualQuaternion norm(const DualQuaternion& h) {
  const double pp = primary_norm_squared(h);
  if (pp == 0.0) {
    if (!is_quaternion(h)) {
      throw DomainError("norm is undefined for a nonzero dual quaternion with zero primary part");
    }
    return 0.0;
  }
  const double np = std::sqrt(pp);
  return {np, 0, 0, 0, primary_dual_inner(h) / np, 0, 0, 0};
}

DualQuaternion inv(const DualQuaternion& h) {
  const double pp = primary_norm_squared(h);
  if (pp == 0.0) {
    throw DomainError("inverse is undefined for zero primary part");
  }
  // h conj(h) = a + E b with a = |P|^2, b = 2 <P,D>; (a + E b)^-1 = 1/a - E b/a^2.
  const double b = 2.0 * primary_dual_inner(h);
  return conj(h) * DualQuaternion(1.0 / pp, 0, 0, 0, -b / (pp * pp), 0, 0, 0);
}

DualQuaternion normalize(const DualQuaternion& h) { return h * inv(norm(h)); }

DualQuaternion exp(const DualQuaternion& g) {
  if (g[0] != 0.0 || g[4] != 0.0) {
    throw DomainError("exp is defined for pure dual quaternions only");
  }
  const double phi = std::sqrt(g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
  DualQuaternion prim = 1.0;
  if (phi > 0.0) {
    const double s = std::sin(phi) / phi;
    prim = {std::cos(phi), s * g[1], s * g[2], s * g[3]};
  }
  return prim + E_ * D(g) * prim;
}

DualQuaternion log(const DualQuaternion& x) {
  require_unit(x, "log");
  const DualQuaternion p = translation(x);
  const double s = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  // Near the identity rotation the axis is undefined; the rotation part is 0.
  const DualQuaternion prim =
      (s < kSmallAngle) ? DualQuaternion() : scale(rotation_axis(x), 0.5 * rotation_angle(x));
  return prim + E_ * scale(p, 0.5);
}

DualQuaternion pow(const DualQuaternion& x, double s) {
  require_unit(x, "pow");
  const Vector3d p = vec3(translation(x));
  const Vector3d v(x[1], x[2], x[3]);
  const double sin_half = v.norm();
  if (sin_half < kSmallAngle) {
    // No usable screw axis. For phi = 2 pi fall back to the k axis.
    const DualQuaternion r = x[0] > 0.0 ? DualQuaternion(1.0) : make_rotation(k_, 2.0 * M_PI * s);
    return make_translation(from_vec3(s * p)) * r;
  }

  // Screw parameters: angle phi, pitch d along axis n, axis moment m.
  const Vector3d n = v / sin_half;
  const double phi = 2.0 * std::atan2(sin_half, x[0]);
  const double d = p.dot(n);
  const Vector3d m = 0.5 * (p.cross(n) + (p - d * n) * (x[0] / sin_half));

  // cos(s theta/2) + sin(s theta/2) (n + E m) with dual angle theta = phi + E d.
  const double c = std::cos(0.5 * s * phi), sn = std::sin(0.5 * s * phi);
  const double half_sd = 0.5 * s * d;
  const Vector3d dual_v = sn * m + half_sd * c * n;
  return {c, sn * n(0), sn * n(1), sn * n(2), -half_sd * sn, dual_v(0), dual_v(1), dual_v(2)};
}

DualQuaternion make_pose(const DualQuaternion& r, const DualQuaternion& p) {
  return r + E_ * 0.5 * p * r;
}

DualQuaternion make_rotation(const DualQuaternion& axis, double angle) {
  const double n = std::sqrt(axis[1] * axis[1] + axis[2] * axis[2] + axis[3] * axis[3]);
  if (n == 0.0) throw DomainError("rotation axis must be nonzero");
  const double s = std::sin(0.5 * angle) / n;
  return {std::cos(0.5 * angle), s * axis[1], s * axis[2], s * axis[3]};
}

DualQuaternion make_translation(const DualQuaternion& p) {
  return 1.0 + E_ * 0.5 * p;
}

DualQuaternion rotation(const DualQuaternion& x) {
  require_unit(x, "rotation");
  return P(x);
}

DualQuaternion translation(const DualQuaternion& x) {
  require_unit(x, "translation");
  // The real part vanishes for unit x; drop its rounding residue.
  const DualQuaternion t = 2.0 * D(x) * conj(P(x));
  return {0.0, t[1], t[2], t[3]};
}

double rotation_angle(const DualQuaternion& x) {
  require_unit(x, "rotation_angle");
  const double s = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  return 2.0 * std::atan2(s, x[0]);
}

DualQuaternion rotation_axis(const DualQuaternion& x) {
  require_unit(x, "rotation_axis");
  const double s = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (s < kSmallAngle) return k_;
  return {0, x[1] / s, x[2] / s, x[3] / s};
}

DualQuaternion Ad(const DualQuaternion& a, const DualQuaternion& b) {
  require_unit(a, "Ad");
  return a * b * conj(a);
}

DualQuaternion Adsharp(const DualQuaternion& a, const DualQuaternion& b) {
  require_unit(a, "Adsharp");
  return sharp(a) * b * conj(a);
}

Matrix4d hamiplus4(const DualQuaternion& h) {
  Matrix4d m;
  m << h[0], -h[1], -h[2], -h[3],
       h[1],  h[0], -h[3],  h[2],
       h[2],  h[3],  h[0], -h[1],
       h[3], -h[2],  h[1],  h[0];
  return m;
}

Matrix4d haminus4(const DualQuaternion& h) {
  Matrix4d m;
  m << h[0], -h[1], -h[2], -h[3],
       h[1],  h[0],  h[3], -h[2],
       h[2], -h[3],  h[0],  h[1],
       h[3],  h[2], -h[1],  h[0];
  return m;
}

Matrix8d hamiplus8(const DualQuaternion& h) {
  Matrix8d m = Matrix8d::Zero();
  const Matrix4d hp = hamiplus4(P(h));
  m.topLeftCorner<4, 4>() = hp;
  m.bottomRightCorner<4, 4>() = hp;
  m.bottomLeftCorner<4, 4>() = hamiplus4(D(h));
  return m;
}

Matrix8d haminus8(const DualQuaternion& h) {
  Matrix8d m = Matrix8d::Zero();
  const Matrix4d hm = haminus4(P(h));
  m.topLeftCorner<4, 4>() = hm;
  m.bottomRightCorner<4, 4>() = hm;
  m.bottomLeftCorner<4, 4>() = haminus4(D(h));
  return m;
}

MatrixXd hamiplus(const DualQuaternion& h, int dim) {
  if (dim == 8) return hamiplus8(h);
  if (dim == 4) {
    if (!is_quaternion(h)) throw DomainError("hamiplus4 requires a quaternion (zero dual part)");
    return hamiplus4(h);
  }
  throw DimensionError("Hamilton operator dimension must be 4 or 8");
}

MatrixXd haminus(const DualQuaternion& h, int dim) {
  if (dim == 8) return haminus8(h);
  if (dim == 4) {
    if (!is_quaternion(h)) throw DomainError("haminus4 requires a quaternion (zero dual part)");
    return haminus4(h);
  }
  throw DimensionError("Hamilton operator dimension must be 4 or 8");
}

Matrix4d conj_matrix4() { return Vector4d(1, -1, -1, -1).asDiagonal(); }

Matrix8d conj_matrix8() {
  Vector8d d;
  d << 1, -1, -1, -1, 1, -1, -1, -1;
  return d.asDiagonal();
}

Matrix8d sharp_matrix8() {
  Vector8d d;
  d << 1, 1, 1, 1, -1, -1, -1, -1;
  return d.asDiagonal();
}

Vector3d vec3(const DualQuaternion& h) {
  if (std::abs(h[0]) > kRealPartTolerance) {
    throw DomainError("vec3 requires a zero real part");
  }
  return {h[1], h[2], h[3]};
}

Vector4d vec4(const DualQuaternion& h) { return {h[0], h[1], h[2], h[3]}; }

Vector6d vec6(const DualQuaternion& h) {
  if (std::abs(h[0]) > kRealPartTolerance || std::abs(h[4]) > kRealPartTolerance) {
    throw DomainError("vec6 requires zero real parts");
  }
  Vector6d v;
  v << h[1], h[2], h[3], h[5], h[6], h[7];
  return v;
}

Vector8d vec8(const DualQuaternion& h) {
  Vector8d v;
  for (int i = 0; i < 8; ++i) v(i) = h[i];
  return v;
}

VectorXd vec(const DualQuaternion& h, int dim) {
  switch (dim) {
    case 3: return vec3(h);
    case 4: return vec4(h);
    case 6: return vec6(h);
    case 8: return vec8(h);
    default: throw DimensionError("vec dimension must be 3, 4, 6 or 8");
  }
}

DualQuaternion from_vec3(const Vector3d& v) { return {0, v(0), v(1), v(2)}; }

std::string to_string(const DualQuaternion& h) {
  const auto& c = h.coefficients();
  const bool has_primary = c[0] != 0.0 || c[1] != 0.0 || c[2] != 0.0 || c[3] != 0.0;
  const bool has_dual = !is_quaternion(h);
  if (!has_primary && !has_dual) return "0";
  std::string out;
  if (has_primary) append_block(out, c.data());
  if (has_dual) {
    if (has_primary) out += " + ";
    out += "E*";
    append_block(out, c.data() + 4);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& h) {
  return os << to_string(h);
}

bool approx_equal(const DualQuaternion& a, const DualQuaternion& b, double tol) {
  for (int i = 0; i < 8; ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace dqkit
