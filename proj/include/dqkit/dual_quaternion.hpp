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

#ifndef DQKIT_DUAL_QUATERNION_HPP_
#define DQKIT_DUAL_QUATERNION_HPP_

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace dqkit {

using Vector3d = Eigen::Vector3d;
using Vector4d = Eigen::Vector4d;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector8d = Eigen::Matrix<double, 8, 1>;
using Matrix4d = Eigen::Matrix4d;
using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Tolerance used by is_unit / is_pure style classification helpers.
inline constexpr double kUnitTolerance = 1e-9;

// h = (p1 + p2 i + p3 j + p4 k) + E (d1 + d2 i + d3 j + d4 k), with
// i^2 = j^2 = k^2 = ijk = -1 and E^2 = 0, E != 0.
//
// Coefficients are stored scalar-first, primary part then dual part; the same
// order is used by every vec*/from_vec map and every Hamilton operator.
class DualQuaternion {
 public:
  constexpr DualQuaternion() : c_{} {}
  // Real scalars promote implicitly so that `1 + E_ * 0.5 * p` reads naturally.
  constexpr DualQuaternion(double scalar)  // NOLINT(google-explicit-constructor)
      : c_{scalar, 0, 0, 0, 0, 0, 0, 0} {}
  constexpr DualQuaternion(double p1, double p2, double p3, double p4,
                           double d1 = 0, double d2 = 0, double d3 = 0,
                           double d4 = 0)
      : c_{p1, p2, p3, p4, d1, d2, d3, d4} {}
  explicit constexpr DualQuaternion(const std::array<double, 8>& c) : c_(c) {}

  // Accepts 4 (quaternion) or 8 coefficients; DimensionError otherwise.
  static DualQuaternion from_vec(const Eigen::Ref<const VectorXd>& v);

  constexpr double operator[](int i) const { return c_[i]; }
  constexpr const std::array<double, 8>& coefficients() const { return c_; }

  friend constexpr bool operator==(const DualQuaternion& a,
                                   const DualQuaternion& b) = default;

  constexpr DualQuaternion operator-() const {
    return DualQuaternion(-c_[0], -c_[1], -c_[2], -c_[3], -c_[4], -c_[5],
                          -c_[6], -c_[7]);
  }

  friend constexpr DualQuaternion operator+(const DualQuaternion& a,
                                            const DualQuaternion& b) {
    std::array<double, 8> r{};
    for (int i = 0; i < 8; ++i) r[i] = a.c_[i] + b.c_[i];
    return DualQuaternion(r);
  }

  friend constexpr DualQuaternion operator-(const DualQuaternion& a,
                                            const DualQuaternion& b) {
    std::array<double, 8> r{};
    for (int i = 0; i < 8; ++i) r[i] = a.c_[i] - b.c_[i];
    return DualQuaternion(r);
  }

  friend constexpr DualQuaternion operator*(const DualQuaternion& a,
                                            const DualQuaternion& b) {
    const auto& x = a.c_;
    const auto& y = b.c_;
    // (Pa + E Da)(Pb + E Db) = Pa Pb + E (Pa Db + Da Pb)
    const auto qmul = [](double a1, double a2, double a3, double a4, double b1,
                         double b2, double b3, double b4) {
      return std::array<double, 4>{a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
                                   a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
                                   a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
                                   a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1};
    };
    const auto pp = qmul(x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]);
    const auto pd = qmul(x[0], x[1], x[2], x[3], y[4], y[5], y[6], y[7]);
    const auto dp = qmul(x[4], x[5], x[6], x[7], y[0], y[1], y[2], y[3]);
    return DualQuaternion(pp[0], pp[1], pp[2], pp[3], pd[0] + dp[0],
                          pd[1] + dp[1], pd[2] + dp[2], pd[3] + dp[3]);
  }

  DualQuaternion& operator+=(const DualQuaternion& b) { return *this = *this + b; }
  DualQuaternion& operator-=(const DualQuaternion& b) { return *this = *this - b; }
  DualQuaternion& operator*=(const DualQuaternion& b) { return *this = *this * b; }

 private:
  std::array<double, 8> c_;
};

// Right division a / b = a inv(b).
DualQuaternion operator/(const DualQuaternion& a, const DualQuaternion& b);
// Left division a \ b = inv(a) b.
DualQuaternion left_divide(const DualQuaternion& a, const DualQuaternion& b);

inline constexpr DualQuaternion i_{0, 1, 0, 0};
inline constexpr DualQuaternion j_{0, 0, 1, 0};
inline constexpr DualQuaternion k_{0, 0, 0, 1};
inline constexpr DualQuaternion E_{0, 0, 0, 0, 1, 0, 0, 0};

// --- parts -------------------------------------------------------------------

constexpr DualQuaternion P(const DualQuaternion& h) {
  return {h[0], h[1], h[2], h[3]};
}
constexpr DualQuaternion D(const DualQuaternion& h) {
  return {h[4], h[5], h[6], h[7]};
}
constexpr DualQuaternion Re(const DualQuaternion& h) {
  return {h[0], 0, 0, 0, h[4], 0, 0, 0};
}
constexpr DualQuaternion Im(const DualQuaternion& h) {
  return {0, h[1], h[2], h[3], 0, h[5], h[6], h[7]};
}

constexpr DualQuaternion conj(const DualQuaternion& h) {
  return {h[0], -h[1], -h[2], -h[3], h[4], -h[5], -h[6], -h[7]};
}
// P(h) - E D(h).
constexpr DualQuaternion sharp(const DualQuaternion& h) {
  return {h[0], h[1], h[2], h[3], -h[4], -h[5], -h[6], -h[7]};
}

// --- classification ----------------------------------------------------------

bool is_unit(const DualQuaternion& h, double tol = kUnitTolerance);
bool is_pure(const DualQuaternion& h);  // exact: p1 == d1 == 0
bool is_real(const DualQuaternion& h);
bool is_quaternion(const DualQuaternion& h);  // dual part exactly zero
bool is_pure_quaternion(const DualQuaternion& h);

// --- norms, inverse, exp/log -------------------------------------------------

// sqrt(h conj(h)) as a dual scalar: ||P|| + E <P,D>/||P||.
// DomainError when P(h) = 0 and D(h) != 0.
DualQuaternion norm(const DualQuaternion& h);
DualQuaternion inv(const DualQuaternion& h);
DualQuaternion normalize(const DualQuaternion& h);

// log(x) = (phi n + E p) / 2 for rotation angle phi, axis n and translation
// p; exp(g) = r + E D(g) r with r the rotation exp(P(g)). The pair inverts
// each other on unit x.
DualQuaternion exp(const DualQuaternion& g);
DualQuaternion log(const DualQuaternion& x);
// Screw-motion power: rotation s phi about the same screw axis with
// translation s d along it, so pow(x, 1/2) * pow(x, 1/2) = x. Agrees with
// exp(s log(x)) when the translation is parallel to the rotation axis.
DualQuaternion pow(const DualQuaternion& x, double s);

// --- rigid motion helpers ----------------------------------------------------

// r + E (1/2) p r for a unit quaternion r and pure quaternion p.
DualQuaternion make_pose(const DualQuaternion& r, const DualQuaternion& p);
// cos(angle/2) + n sin(angle/2); the axis is normalized.
DualQuaternion make_rotation(const DualQuaternion& axis, double angle);
DualQuaternion make_translation(const DualQuaternion& p);

DualQuaternion rotation(const DualQuaternion& x);
DualQuaternion translation(const DualQuaternion& x);
DualQuaternion rotation_axis(const DualQuaternion& x);
double rotation_angle(const DualQuaternion& x);

// a b conj(a)
DualQuaternion Ad(const DualQuaternion& a, const DualQuaternion& b);
// sharp(a) b conj(a); maps planes the way Ad maps lines.
DualQuaternion Adsharp(const DualQuaternion& a, const DualQuaternion& b);

constexpr DualQuaternion cross(const DualQuaternion& a,
                               const DualQuaternion& b) {
  const DualQuaternion ab = a * b;
  const DualQuaternion ba = b * a;
  const DualQuaternion s = ab - ba;
  return {0.5 * s[0], 0.5 * s[1], 0.5 * s[2], 0.5 * s[3],
          0.5 * s[4], 0.5 * s[5], 0.5 * s[6], 0.5 * s[7]};
}
constexpr DualQuaternion dot(const DualQuaternion& a, const DualQuaternion& b) {
  const DualQuaternion s = a * b + b * a;
  return {-0.5 * s[0], -0.5 * s[1], -0.5 * s[2], -0.5 * s[3],
          -0.5 * s[4], -0.5 * s[5], -0.5 * s[6], -0.5 * s[7]};
}

// --- matrix maps ---------------------------------------------------------------

Matrix4d hamiplus4(const DualQuaternion& h);
Matrix4d haminus4(const DualQuaternion& h);
Matrix8d hamiplus8(const DualQuaternion& h);
Matrix8d haminus8(const DualQuaternion& h);
// dim is 4 or 8; returned as a dynamic matrix for callers that pick at runtime.
MatrixXd hamiplus(const DualQuaternion& h, int dim);
MatrixXd haminus(const DualQuaternion& h, int dim);

// diag(1,-1,-1,-1): vec4(conj(q)) = C4 vec4(q).
Matrix4d conj_matrix4();
// diag(1,-1,-1,-1,1,-1,-1,-1): vec8(conj(h)) = C8 vec8(h).
Matrix8d conj_matrix8();
// diag(1,1,1,1,-1,-1,-1,-1): vec8(sharp(h)) = S8 vec8(h).
Matrix8d sharp_matrix8();

Vector3d vec3(const DualQuaternion& h);
Vector4d vec4(const DualQuaternion& h);
Vector6d vec6(const DualQuaternion& h);
Vector8d vec8(const DualQuaternion& h);
VectorXd vec(const DualQuaternion& h, int dim);
DualQuaternion from_vec3(const Vector3d& v);

// Console format, e.g. "( - 2 + 1i + 1j) + E*(1 + 1i + 2k)".
std::string to_string(const DualQuaternion& h);
std::ostream& operator<<(std::ostream& os, const DualQuaternion& h);

bool approx_equal(const DualQuaternion& a, const DualQuaternion& b,
                  double tol = kUnitTolerance);

}  // namespace dqkit

#endif  // DQKIT_DUAL_QUATERNION_HPP_
