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


#include "dqkit/kinematics.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "dqkit/errors.hpp"
#include "dqkit/robots.hpp"
#include "jacobian_checks.hpp"
#include "test_support.hpp"

namespace dqkit {
namespace {

using testing::Random;

constexpr double kFkmTolerance = 1e-10;
constexpr double kJacobianTolerance = 1e-5;

// YouBot arm as printed with the example program.
const std::vector<double> kYoubotTheta = {0, M_PI / 2, 0, M_PI / 2, 0};
const std::vector<double> kYoubotD = {0.147, 0, 0, 0, 0.218};
const std::vector<double> kYoubotA = {0, 0.155, 0.135, 0, 0};
const std::vector<double> kYoubotAlpha = {M_PI / 2, 0, 0, M_PI / 2, 0};

testing::Matrix4 youbot_htm(const VectorXd& q) {
  return testing::htm_rot_z(0) * testing::htm_trans(q(0), q(1), 0) * testing::htm_rot_z(q(2)) *
         testing::htm_trans(0.22575, 0, 0.1441) *
         testing::htm_chain(kYoubotTheta, kYoubotD, kYoubotA, kYoubotAlpha, q.tail(5));
}

TEST(DhJoint, Elementary) {
  EXPECT_EQ(dh_joint_transform(0, 0, 0, 0), 1);
  EXPECT_TRUE(approx_equal(dh_joint_transform(M_PI, 0, 0, 0), k_, 1e-15));
  Random rnd(41);
  for (int n = 0; n < 100; ++n) {
    const double t = rnd.uniform(-3, 3), d = rnd.uniform(-1, 1), a = rnd.uniform(-1, 1),
                 al = rnd.uniform(-3, 3);
    EXPECT_LE(testing::pose_distance(vec8(dh_joint_transform(t, d, a, al)),
                                     testing::dq_from_htm(testing::htm_dh(t, d, a, al))),
              1e-14);
  }
}

TEST(Fkm, Lwr4MatchesHtmChain) {
  auto lwr4 = lwr4_kinematics();
  const DHParameters& dh = lwr4->dh();
  // The effector is a pure translation along z.
  const testing::Matrix4 effector = testing::htm_trans(0, 0, vec3(translation(lwr4->effector()))(2));
  ASSERT_EQ(rotation(lwr4->effector()), 1);
  Random rnd(42);
  for (int n = 0; n < 1000; ++n) {
    const VectorXd q = rnd.vector(7);
    const DualQuaternion x = lwr4->fkm(q);
    ASSERT_TRUE(is_unit(x));
    const auto oracle = testing::dq_from_htm(
        testing::htm_chain(dh.theta, dh.d, dh.a, dh.alpha, q) * effector);
    ASSERT_LE(testing::pose_distance(vec8(x), oracle), kFkmTolerance) << q.transpose();
  }
}

TEST(Fkm, YoubotMatchesHtmChain) {
  auto youbot = youbot_kinematics();
  ASSERT_EQ(youbot->dof(), 8);
  Random rnd(43);
  for (int n = 0; n < 1000; ++n) {
    VectorXd q = rnd.vector(8);
    q.head(2) = rnd.vector(2, -3, 3);
    ASSERT_LE(testing::pose_distance(vec8(youbot->fkm(q)), testing::dq_from_htm(youbot_htm(q))),
              kFkmTolerance);
  }
  const VectorXd zero = VectorXd::Zero(8);
  EXPECT_LE(testing::pose_distance(vec8(youbot->fkm(zero)), testing::dq_from_htm(youbot_htm(zero))),
            kFkmTolerance);
}

TEST(Fkm, YoubotBaseDisplacement) {
  auto youbot = youbot_kinematics();
  const DualQuaternion x_bm = 1 + E_ * 0.5 * (0.22575 * i_ + 0.1441 * k_);
  EXPECT_TRUE(approx_equal(youbot->fkm(VectorXd::Zero(8), 0), x_bm, 1e-15));
}

TEST(Fkm, FramesComposeMultiplicatively) {
  Random rnd(44);
  auto raw = lwr4_kinematics();
  auto framed = lwr4_kinematics();
  const DualQuaternion fr = rnd.pose(), fb = rnd.pose(), e = rnd.pose();
  framed->set_reference_frame(fr);
  framed->set_base_frame(fb);
  framed->set_effector(raw->effector() * e);
  for (int n = 0; n < 20; ++n) {
    const VectorXd q = rnd.vector(7);
    EXPECT_TRUE(approx_equal(framed->fkm(q), fr * fb * raw->fkm(q) * e, 1e-12));
  }
  EXPECT_THROW(framed->set_base_frame(2), DomainError);
  EXPECT_THROW(framed->set_effector(1 + i_), DomainError);
}

TEST(Fkm, IntermediateLinks) {
  auto lwr4 = lwr4_kinematics();
  const DHParameters& dh = lwr4->dh();
  Random rnd(45);
  const VectorXd q = rnd.vector(7);
  for (int link = 0; link < 6; ++link) {
    const VectorXd head = q.head(link + 1);
    const auto oracle = testing::dq_from_htm(testing::htm_chain(dh.theta, dh.d, dh.a, dh.alpha, head));
    EXPECT_LE(testing::pose_distance(vec8(lwr4->fkm(q, link)), oracle), kFkmTolerance);
  }
  EXPECT_TRUE(approx_equal(lwr4->fkm(q, 6), lwr4->fkm(q), 1e-15));
  EXPECT_THROW(lwr4->fkm(q, 7), DimensionError);
}

TEST(Fkm, DimensionErrors) {
  auto lwr4 = lwr4_kinematics();
  EXPECT_THROW(lwr4->fkm(VectorXd::Zero(6)), DimensionError);
  EXPECT_THROW(lwr4->pose_jacobian(VectorXd::Zero(8)), DimensionError);
  EXPECT_THROW(youbot_kinematics()->fkm(VectorXd::Zero(7)), DimensionError);
}

TEST(Fkm, SingleZeroJoint) {
  SerialManipulator one(DHParameters{{0}, {0}, {0}, {0}});
  EXPECT_EQ(one.fkm(VectorXd::Zero(1)), 1);
  EXPECT_THROW(SerialManipulator(DHParameters{}), DomainError);
  EXPECT_THROW(SerialManipulator(DHParameters{{0, 0}, {0}, {0}, {0}}), DomainError);
}

TEST(PoseJacobian, SingleRevoluteJoint) {
  SerialManipulator one(DHParameters{{0}, {0}, {0}, {0}});
  // x = cos(q/2) + k sin(q/2), dx/dq at 0 = k / 2
  EXPECT_TRUE(approx_equal(DualQuaternion::from_vec(one.pose_jacobian(VectorXd::Zero(1)).col(0)),
                           0.5 * k_, 1e-15));
}

TEST(PoseJacobian, DerivativeTrivialCases) {
  auto lwr4 = lwr4_kinematics();
  Random rnd(46);
  const VectorXd q = rnd.vector(7);
  EXPECT_EQ(testing::max_abs(lwr4->pose_jacobian_derivative(q, VectorXd::Zero(7))), 0);
  EXPECT_THROW(lwr4->pose_jacobian_derivative(q, VectorXd::Zero(3)), DimensionError);
}

TEST(PoseJacobian, TranslationOfPureRotationChain) {
  // Joint on the base axis: the base point does not move.
  SerialManipulator one(DHParameters{{0}, {0}, {0}, {0}});
  const VectorXd q = VectorXd::Constant(1, 0.4);
  EXPECT_LE(testing::max_abs(translation_jacobian(one.pose_jacobian(q), one.fkm(q))), 1e-15);
  EXPECT_EQ(testing::max_abs(translation_jacobian(MatrixXd::Zero(8, 3), 1)), 0);
}

TEST(PoseJacobian, StaticPrimitives) {
  const Line l = make_line(k_, 0);
  const Plane p = make_plane(k_, 0);
  EXPECT_EQ(testing::max_abs(line_jacobian(MatrixXd::Zero(8, 2), 1, l)), 0);
  EXPECT_EQ(testing::max_abs(plane_jacobian(MatrixXd::Zero(8, 2), 1, p)), 0);
}

TEST(DistanceJacobian, CoincidentPoints) {
  auto lwr4 = lwr4_kinematics();
  const VectorXd q = Random(47).vector(7);
  const DualQuaternion x = lwr4->fkm(q);
  const MatrixXd jt = translation_jacobian(lwr4->pose_jacobian(q), x);
  EXPECT_LE(testing::max_abs(point_to_point_distance_jacobian(jt, translation(x), translation(x))),
            0);
  EXPECT_THROW(point_to_point_distance_jacobian(MatrixXd::Zero(3, 7), 0, 0), DimensionError);
}

TEST(Jacobians, FiniteDifferences) {
  for (const auto& check : testing::jacobian_checks()) {
    const double err = check.run(100, 48);
    EXPECT_LE(err, kJacobianTolerance) << check.name;
  }
}

TEST(MobileBase, Holonomic) {
  MobileBase base = MobileBase::holonomic();
  EXPECT_EQ(base.fkm(VectorXd::Zero(3)), 1);
  const DualQuaternion x = base.fkm(Eigen::Vector3d(1, 2, M_PI / 2));
  EXPECT_TRUE(approx_equal(translation(x), i_ + 2 * j_, 1e-15));
  EXPECT_TRUE(approx_equal(rotation(x), make_rotation(k_, M_PI / 2), 1e-15));
  EXPECT_TRUE(base.constraint_jacobian(0.3).isIdentity());
}

TEST(MobileBase, DifferentialConstraint) {
  auto base = differential_drive_kinematics();
  ASSERT_EQ(base->kind(), MobileBaseKind::kDifferential);
  const double r = base->wheel_radius(), l = base->axis_length(), phi = 0.7;
  MatrixXd expected(3, 2);
  expected << r / 2 * std::cos(phi), r / 2 * std::cos(phi), r / 2 * std::sin(phi),
      r / 2 * std::sin(phi), r / l, -r / l;
  EXPECT_LE(testing::max_abs(base->constraint_jacobian(phi) - expected), 1e-15);
  const VectorXd q = Eigen::Vector3d(0.2, -0.1, phi);
  EXPECT_LE(testing::max_abs(base->wheel_pose_jacobian(q) -
                             base->pose_jacobian(q) * base->constraint_jacobian(phi)),
            1e-15);
  EXPECT_THROW(MobileBase::differential(0, 1), DomainError);
}

TEST(WholeBody, Sequential) {
  auto arm = lwr4_kinematics();
  WholeBody forward(arm);
  forward.add(std::make_shared<MobileBase>(MobileBase::holonomic()));
  VectorXd q(10);
  q << 0, 1, 2, 3, 4, 5, 6, 7, 8, 9;
  EXPECT_EQ(forward.sequential(q), q);

  WholeBody rev(arm);
  rev.add_reversed(std::make_shared<MobileBase>(MobileBase::holonomic()));
  VectorXd expected = q;
  expected.tail(3) << 9, 8, 7;
  EXPECT_EQ(rev.sequential(q), expected);
}

TEST(WholeBody, ReversedChainIsConjugated) {
  auto a = lwr4_kinematics();
  auto b = lwr4_kinematics();
  b->set_base_frame(make_translation(0.5 * i_));
  WholeBody chain(a);
  chain.add_reversed(b);
  Random rnd(49);
  for (int n = 0; n < 50; ++n) {
    const VectorXd q = rnd.vector(14);
    EXPECT_TRUE(approx_equal(chain.fkm(q), a->fkm(q.head(7)) * conj(b->fkm(q.tail(7))), 1e-12));
  }
}

TEST(Cooperative, TrivialAndMidpoint) {
  Random rnd(50);
  const DualQuaternion x = rnd.pose();
  EXPECT_TRUE(approx_equal(relative_pose(x, x), 1, 1e-14));
  EXPECT_TRUE(approx_equal(absolute_pose(x, x), x, 1e-14));
  for (int n = 0; n < 100; ++n) {
    const DualQuaternion x1 = rnd.pose(), x2 = rnd.pose();
    const DualQuaternion xa = absolute_pose(x1, x2);
    // From x_a, the effectors sit at the square root of x_r and its inverse.
    const DualQuaternion half = pow(relative_pose(x1, x2), 0.5);
    EXPECT_TRUE(approx_equal(conj(xa) * x1, half, 1e-9));
    EXPECT_TRUE(approx_equal(conj(xa) * x2, conj(half), 1e-9));
  }
  EXPECT_THROW(relative_pose(2, 1), DomainError);
}

}  // namespace
}  // namespace dqkit
