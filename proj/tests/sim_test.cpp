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


#include "dqkit/sim.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dqkit/errors.hpp"
#include "dqkit/robots.hpp"
#include "test_support.hpp"

namespace dqkit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::Random;

const fs::path kSceneDir = fs::path(DQKIT_SOURCE_DIR) / "scenes";

json scene_json() {
  std::ifstream in(kSceneDir / "whiteboard.json");
  return json::parse(in);
}

Scene scene_with(const json& j) { return parse_scene(j.dump(), kSceneDir); }

Scene short_scene(double total) {
  json j = scene_json();
  j["simulation"]["total_time"] = total;
  return scene_with(j);
}

TEST(Reference, InitialPose) {
  Random rnd(91);
  const DualQuaternion x0 = rnd.pose();
  const TrajectoryParams params;
  const Reference ref = compute_lwr4_reference(params, x0, 0);
  EXPECT_TRUE(approx_equal(ref.x, x0 * (1 + E_ * (params.d_z / 2) * k_), 1e-15));
}

TEST(Reference, DerivativeMatchesFiniteDifferences) {
  Random rnd(92);
  const TrajectoryParams params;
  for (int k = 0; k < 100; ++k) {
    const DualQuaternion x0 = rnd.pose();
    const double t = rnd.uniform(0, 200);
    const double h = 1e-6;
    const Reference ref = compute_lwr4_reference(params, x0, t);
    EXPECT_TRUE(is_unit(ref.x));
    const Vector8d numeric = (vec8(compute_lwr4_reference(params, x0, t + h).x) -
                              vec8(compute_lwr4_reference(params, x0, t - h).x)) /
                             (2 * h);
    EXPECT_LE(testing::max_abs(ref.x_dot - numeric), 1e-6);

    const Reference pen = compute_youbot_reference(ref);
    const Vector8d pen_numeric =
        (vec8(compute_youbot_reference(compute_lwr4_reference(params, x0, t + h)).x) -
         vec8(compute_youbot_reference(compute_lwr4_reference(params, x0, t - h)).x)) /
        (2 * h);
    EXPECT_LE(testing::max_abs(pen.x_dot - pen_numeric), 1e-6);
  }
}

TEST(Reference, PenFrame) {
  const Reference identity{1, Vector8d::Zero()};
  EXPECT_TRUE(approx_equal(compute_youbot_reference(identity).x, pen_offset() * j_, 1e-15));
  EXPECT_EQ(pen_offset(), 1 + E_ * 0.5 * 0.015 * k_);

  Random rnd(93);
  for (int k = 0; k < 50; ++k) {
    const Reference ref{rnd.pose(), Vector8d::Zero()};
    const DualQuaternion x_mm = compute_youbot_reference(ref).x;
    // The pen z-axis points back at the whiteboard.
    EXPECT_TRUE(approx_equal(Ad(rotation(x_mm), k_), -Ad(rotation(ref.x), k_), 1e-14));
    // The pen tip sits 15 mm along the whiteboard normal.
    EXPECT_TRUE(approx_equal(translation(conj(ref.x) * x_mm), 0.015 * k_, 1e-14));
  }
  EXPECT_THROW(compute_youbot_reference({2, Vector8d::Zero()}), DomainError);
}

TEST(Constraints, RowsAndActivation) {
  const Scene scene = short_scene(1);
  const WholeBody& chain = *scene.mobile_manipulator;
  VectorXd q = scene.mobile_q0;
  // Place the disk center on the wall's safety boundary (normal +j).
  ASSERT_EQ(scene.wall.normal(), j_);
  q(0) = 0.0;
  q(1) = scene.wall.offset() + scene.robot_radius;
  const ConstraintRows rows = compute_constraints(scene, chain, q);
  ASSERT_EQ(rows.A.rows(), scene.obstacle_count());
  ASSERT_EQ(rows.A.cols(), chain.dof());
  EXPECT_NEAR(rows.a(0), 0, 1e-15);
  EXPECT_NEAR(rows.clearance(0), 0, 1e-15);

  // Touching the first cylinder's safety circle.
  const Cylinder& c = scene.cylinders[0];
  const Vector3d axis_point = vec3(c.axis.closest_point_to_origin());
  q(0) = axis_point(0) + c.radius + scene.robot_radius;
  q(1) = axis_point(1);
  EXPECT_NEAR(compute_constraints(scene, chain, q).a(1), 0, 1e-14);
}

TEST(Constraints, RowsAreDistanceJacobians) {
  const Scene scene = short_scene(1);
  const WholeBody& chain = *scene.mobile_manipulator;
  Random rnd(94);
  for (int k = 0; k < 20; ++k) {
    VectorXd q = rnd.vector(chain.dof());
    const ConstraintRows rows = compute_constraints(scene, chain, q);
    // d~ per obstacle with the wall signed and cylinders squared.
    auto margins = [&](const VectorXd& v) {
      const ConstraintRows r = compute_constraints(scene, chain, v);
      VectorXd m(r.a.size());
      for (int i = 0; i < m.size(); ++i) m(i) = r.a(i) / scene.eta(i);
      return m;
    };
    EXPECT_LE(testing::max_abs(-rows.A - testing::numeric_jacobian(margins, q)), 1e-6);
  }
}

TEST(Constraints, FarAwayObstaclesAreInactive) {
  json j = scene_json();
  j["obstacles"]["plane"]["point"] = {0.0, -50.0, 0.0};
  j["obstacles"]["cylinders"][0]["point"] = {40.0, 40.0, 0.0};
  j["obstacles"]["cylinders"][1]["point"] = {-40.0, 40.0, 0.0};
  j["constraints"]["eta_d"] = {10.0, 10.0, 10.0};
  const Scene scene = scene_with(j);
  const VectorXd q = scene.mobile_q0;
  const ConstraintRows rows = compute_constraints(scene, *scene.mobile_manipulator, q);

  ClassicQPController with(scene.mobile_manipulator), without(scene.mobile_manipulator);
  for (auto* c : {&with, &without}) {
    c->set_control_objective(ControlObjective::kPose);
    c->set_gain(10);
  }
  with.set_inequality_constraint(rows.A, rows.a);
  const VectorXd xd = vec8(make_translation(0.2 * i_) * scene.mobile_manipulator->fkm(q));
  EXPECT_LE((with.compute_setpoint_control_signal(q, xd) -
             without.compute_setpoint_control_signal(q, xd))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(Simulation, ZeroDurationIsHeaderOnly) {
  const SimReport report = run_simulation(short_scene(0));
  EXPECT_EQ(report.rows(), 0u);
  const CsvTable table = parse_csv(to_csv(report));
  EXPECT_TRUE(table.rows.empty());
  const std::vector<std::string> expected = {
      "t",         "q_lwr4_1",   "q_lwr4_2",     "q_lwr4_3",     "q_lwr4_4",     "q_lwr4_5",
      "q_lwr4_6",  "q_lwr4_7",   "q_youbot_1",   "q_youbot_2",   "q_youbot_3",   "q_youbot_4",
      "q_youbot_5", "q_youbot_6", "q_youbot_7",  "q_youbot_8",   "err_lwr4",     "err_youbot",
      "dtilde_plane", "dtilde_cyl1", "dtilde_cyl2", "pen_x",     "pen_y",        "pen_z"};
  EXPECT_EQ(table.header, expected);
}

TEST(Simulation, RowCount) {
  EXPECT_EQ(run_simulation(short_scene(1)).rows(), 21u);
  json j = scene_json();
  j["simulation"] = {{"sampling_time", 0.1}, {"total_time", 0.35}};
  EXPECT_EQ(run_simulation(scene_with(j)).rows(), 4u);
}

TEST(Simulation, CsvRoundTripIsExact) {
  const SimReport report = run_simulation(short_scene(2));
  const CsvTable table = parse_csv(to_csv(report));
  ASSERT_EQ(table.rows.size(), report.rows());
  for (size_t r = 0; r < report.rows(); ++r) {
    const auto& row = table.rows[r];
    EXPECT_EQ(row[0], report.t[r]);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(row[1 + i], report.q_manipulator[r](i));
    for (int i = 0; i < 8; ++i) EXPECT_EQ(row[8 + i], report.q_mobile[r](i));
    EXPECT_EQ(row[16], report.error_manipulator[r]);
    EXPECT_EQ(row[17], report.error_mobile[r]);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(row[18 + i], report.clearance[r](i));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(row[21 + i], report.pen[r](i));
  }
}

TEST(Simulation, Deterministic) {
  const Scene scene = short_scene(5);
  EXPECT_EQ(to_csv(run_simulation(scene)), to_csv(run_simulation(scene)));
}

TEST(Simulation, ConstraintsHoldEveryTick) {
  const Scene scene = short_scene(30);
  const SimReport report = run_simulation(scene);
  for (size_t k = 0; k + 1 < report.rows(); ++k) {
    const VectorXd u = (report.q_mobile[k + 1] - report.q_mobile[k]) / scene.sampling_time;
    const ConstraintRows rows = compute_constraints(scene, *scene.mobile_manipulator,
                                                    report.q_mobile[k]);
    ASSERT_LE((rows.A * u - rows.a).maxCoeff(), 1e-8) << "tick " << k;
  }
}

TEST(Simulation, StaticWithoutGainsOrMotion) {
  json j = scene_json();
  for (auto& robot : j["robots"]) robot["gain"] = 0.0;
  j["trajectory"] = {{"omega_n", 0.0}, {"omega_d", 0.0}, {"d_z", 0.0}};
  j["simulation"]["total_time"] = 5.0;
  const Scene scene = scene_with(j);
  const SimReport report = run_simulation(scene);
  for (size_t k = 0; k < report.rows(); ++k) {
    ASSERT_EQ(report.q_manipulator[k], scene.manipulator_q0);
    ASSERT_EQ(report.q_mobile[k], scene.mobile_q0);
  }
}

TEST(Simulation, ObstacleFreeErrorDecays) {
  json j = scene_json();
  j["obstacles"]["plane"]["point"] = {0.0, -50.0, 0.0};
  j["obstacles"]["cylinders"] = json::array();
  j["constraints"]["eta_d"] = {1.0};
  j["simulation"]["total_time"] = 20.0;
  const SimReport report = run_simulation(scene_with(j));
  // Strictly decreasing while the error is well above the discretization floor.
  size_t k = 1;
  for (; k < report.rows() && report.error_mobile[k - 1] > 1e-3; ++k) {
    EXPECT_LT(report.error_mobile[k], report.error_mobile[k - 1]) << "tick " << k;
  }
  EXPECT_LT(k, report.rows());
  double tail = 0;
  for (; k < report.rows(); ++k) tail = std::max(tail, report.error_mobile[k]);
  EXPECT_LT(tail, 2e-3);
}

TEST(Simulation, InfeasibleIsReportedWithTick) {
  json j = scene_json();
  j["obstacles"]["cylinders"] = {
      {{"direction", {0.0, 0.0, 1.0}}, {"point", {0.7884, 0.0, 0.0}}, {"radius", 0.1}},
      {{"direction", {0.0, 0.0, 1.0}}, {"point", {1.3884, 0.0, 0.0}}, {"radius", 0.1}}};
  // Both cylinders overlap the base disk from opposite sides along x, so each
  // row asks the base to move away from the other one.
  j["simulation"]["total_time"] = 1.0;
  try {
    run_simulation(scene_with(j));
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("tick 0"), std::string::npos) << e.what();
  }
}

TEST(Output, SvgAndFiles) {
  const SimReport report = run_simulation(short_scene(2));
  const std::string svg = to_svg_topview(report);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  const fs::path dir = fs::temp_directory_path() / "dqkit_sim_test";
  fs::create_directories(dir);
  emit_csv(report, dir / "out.csv");
  emit_svg_topview(report, dir / "out.svg");
  EXPECT_TRUE(fs::exists(dir / "out.svg"));
  EXPECT_THROW(emit_csv(report, dir / "missing" / "out.csv"), IOError);
  EXPECT_THROW(parse_csv("a,b\n1,x\n"), IOError);
}

TEST(SceneFile, Errors) {
  json j = scene_json();
  j["obstacles"]["cylinders"][0]["radius"] = -1.0;
  EXPECT_THROW(scene_with(j), Error);
  j = scene_json();
  j["robots"][0]["q0"] = {0.0};
  EXPECT_THROW(scene_with(j), Error);
  j = scene_json();
  j["simulation"]["sampling_time"] = 0.0;
  EXPECT_THROW(scene_with(j), Error);
  EXPECT_THROW(parse_scene("{", kSceneDir), ModelFileError);
  EXPECT_THROW(load_scene(kSceneDir / "nope.json"), IOError);
}

TEST(SceneFile, Defaults) {
  json j = scene_json();
  j.erase("constraints");
  const Scene scene = scene_with(j);
  EXPECT_EQ(scene.eta(0), 1.0);
  EXPECT_EQ(scene.eta(2), 1.0);
  const auto& base = dynamic_cast<const MobileBase&>(scene.mobile_manipulator->chain(0));
  EXPECT_DOUBLE_EQ(scene.robot_radius, base.base_diameter() / 2);
}

TEST(Regression, PoseRegulationConverges) {
  const RegressionResult r = run_pose_regulation(*lwr4_kinematics());
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.final_error, 1e-3);
  EXPECT_EQ(r.iterations, 809);
}

}  // namespace
}  // namespace dqkit
