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


// Exercises the shared library through its C header only.

#include "dqkit/dqkit.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

const fs::path kSource = DQKIT_SOURCE_DIR;

std::string text(const double x[8]) {
  size_t needed = 0;
  EXPECT_EQ(dqkit_dq_to_string(x, nullptr, 0, &needed), DQKIT_OK);
  std::string s(needed, '\0');
  EXPECT_EQ(dqkit_dq_to_string(x, s.data(), s.size(), nullptr), DQKIT_OK);
  s.resize(needed - 1);
  return s;
}

TEST(CApi, Arithmetic) {
  const double a[8] = {0, 1, 0, 0, 1, 0, 0, 1};
  const double b[8] = {-2, 0, 1, 0, 0, 1, 0, 1};
  double out[8];
  ASSERT_EQ(dqkit_dq_add(a, b, out), DQKIT_OK);
  EXPECT_EQ(text(out), "( - 2 + 1i + 1j) + E*(1 + 1i + 2k)");
  ASSERT_EQ(dqkit_dq_mul(a, b, out), DQKIT_OK);
  EXPECT_EQ(text(out), "( - 2i + 1k) + E*( - 3 - 1i - 2k)");
  ASSERT_EQ(dqkit_dq_sub(a, a, out), DQKIT_OK);
  EXPECT_EQ(text(out), "0");
}

TEST(CApi, TruncatedString) {
  const double a[8] = {0, 1, 0, 0, 1, 0, 0, 1};
  char buf[4];
  size_t needed = 0;
  ASSERT_EQ(dqkit_dq_to_string(a, buf, sizeof(buf), &needed), DQKIT_OK);
  EXPECT_EQ(std::string(buf).size(), 3u);
  EXPECT_GT(needed, sizeof(buf));
}

TEST(CApi, PoseRoundTrip) {
  const double r[4] = {std::cos(M_PI / 2), 0, std::sin(M_PI / 2), 0};
  const double p[3] = {0.1, 0.2, 0.3};
  double x[8], t[3], rot[4], n[8];
  int unit = 0;
  ASSERT_EQ(dqkit_dq_pose(r, p, x), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_is_unit(x, &unit), DQKIT_OK);
  EXPECT_EQ(unit, 1);
  ASSERT_EQ(dqkit_dq_translation(x, t), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_rotation(x, rot), DQKIT_OK);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(t[i], p[i], 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(rot[i], r[i]);
  ASSERT_EQ(dqkit_dq_norm(x, n), DQKIT_OK);
  EXPECT_NEAR(n[0], 1, 1e-15);

  double c[8], prod[8], lg[8], ex[8], half[8], sq[8];
  ASSERT_EQ(dqkit_dq_conj(x, c), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_mul(x, c, prod), DQKIT_OK);
  EXPECT_NEAR(prod[0], 1, 1e-15);
  ASSERT_EQ(dqkit_dq_inv(x, c), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_log(x, lg), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_exp(lg, ex), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_pow(x, 0.5, half), DQKIT_OK);
  ASSERT_EQ(dqkit_dq_mul(half, half, sq), DQKIT_OK);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(ex[i], x[i], 1e-12);
    EXPECT_NEAR(sq[i], x[i], 1e-12);
  }
}

TEST(CApi, Errors) {
  const double bad[8] = {2, 0, 0, 0, 0, 0, 0, 0};
  const double dual_only[8] = {0, 0, 0, 0, 0, 0, 0, 1};
  double out[8];
  EXPECT_EQ(dqkit_dq_translation(bad, out), DQKIT_ERR_DOMAIN);
  EXPECT_NE(std::string(dqkit_last_error()), "");
  EXPECT_EQ(dqkit_dq_norm(dual_only, out), DQKIT_ERR_DOMAIN);
  EXPECT_EQ(dqkit_dq_add(nullptr, bad, out), DQKIT_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(dqkit_status_string(DQKIT_OK), "ok");
  EXPECT_NE(std::string(dqkit_status_string(DQKIT_ERR_INFEASIBLE)), "");
  EXPECT_NE(std::string(dqkit_version()), "");
}

TEST(CApi, Robots) {
  dqkit_robot* robot = nullptr;
  ASSERT_EQ(dqkit_robot_catalog("youbot", &robot), DQKIT_OK);
  int dof = 0;
  ASSERT_EQ(dqkit_robot_dof(robot, &dof), DQKIT_OK);
  EXPECT_EQ(dof, 8);
  std::vector<double> q(8, 0.0), jac(8 * 8);
  double x[8];
  ASSERT_EQ(dqkit_robot_fkm(robot, q.data(), q.size(), x), DQKIT_OK);
  ASSERT_EQ(dqkit_robot_pose_jacobian(robot, q.data(), q.size(), jac.data(), jac.size()),
            DQKIT_OK);
  EXPECT_EQ(dqkit_robot_fkm(robot, q.data(), 7, x), DQKIT_ERR_DIMENSION);
  EXPECT_EQ(dqkit_robot_pose_jacobian(robot, q.data(), q.size(), jac.data(), 10),
            DQKIT_ERR_DIMENSION);
  dqkit_robot_free(robot);

  ASSERT_EQ(dqkit_robot_catalog("differential_drive", &robot), DQKIT_OK);
  std::vector<double> base_jac(8 * 3);
  ASSERT_EQ(dqkit_robot_pose_jacobian(robot, q.data(), 3, base_jac.data(), base_jac.size()),
            DQKIT_OK);
  // Moving along x at the origin: d/dx (1 + E x i / 2) = E i / 2, row 5.
  EXPECT_NEAR(base_jac[5 * 3 + 0], 0.5, 1e-15);
  dqkit_robot_free(robot);

  EXPECT_EQ(dqkit_robot_catalog("wam", &robot), DQKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(robot, nullptr);
  ASSERT_EQ(dqkit_robot_load((kSource / "models" / "kuka_lwr4.json").c_str(), &robot), DQKIT_OK);
  ASSERT_EQ(dqkit_robot_dof(robot, &dof), DQKIT_OK);
  EXPECT_EQ(dof, 7);
  dqkit_robot_free(robot);
  EXPECT_EQ(dqkit_robot_load("/nonexistent/robot.json", &robot), DQKIT_ERR_IO);

  const fs::path bad = fs::temp_directory_path() / "dqkit_c_api_bad.json";
  std::ofstream(bad) << R"({"kind": "serial", "dh": {"theta": [], "d": [], "a": [], "alpha": []}})";
  EXPECT_EQ(dqkit_robot_load(bad.c_str(), &robot), DQKIT_ERR_MODEL_FILE);
}

TEST(CApi, Simulation) {
  dqkit_scene* scene = nullptr;
  ASSERT_EQ(dqkit_scene_load((kSource / "scenes" / "whiteboard.json").c_str(), &scene), DQKIT_OK);
  ASSERT_EQ(dqkit_scene_set_timing(scene, -1, 1.0), DQKIT_OK);
  EXPECT_EQ(dqkit_scene_set_timing(scene, 0.0, -1), DQKIT_ERR_DOMAIN);
  dqkit_report* report = nullptr;
  ASSERT_EQ(dqkit_simulate(scene, &report), DQKIT_OK);
  size_t rows = 0;
  int obstacles = 0;
  double clearance = 0, err = 0;
  ASSERT_EQ(dqkit_report_rows(report, &rows), DQKIT_OK);
  EXPECT_EQ(rows, 21u);
  ASSERT_EQ(dqkit_report_obstacles(report, &obstacles), DQKIT_OK);
  EXPECT_EQ(obstacles, 3);
  ASSERT_EQ(dqkit_report_min_clearance(report, 0, &clearance), DQKIT_OK);
  EXPECT_GT(clearance, 0);
  EXPECT_EQ(dqkit_report_min_clearance(report, 3, &clearance), DQKIT_ERR_DIMENSION);
  ASSERT_EQ(dqkit_report_max_manipulator_error(report, &err), DQKIT_OK);
  EXPECT_LT(err, 0.1);
  const fs::path csv = fs::temp_directory_path() / "dqkit_c_api.csv";
  ASSERT_EQ(dqkit_report_write_csv(report, csv.c_str()), DQKIT_OK);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("t,q_lwr4_1,", 0), 0u);
  EXPECT_EQ(dqkit_report_write_svg(report, "/nonexistent/dir/out.svg"), DQKIT_ERR_IO);
  dqkit_report_free(report);
  dqkit_scene_free(scene);
  EXPECT_EQ(dqkit_scene_load("/nonexistent/scene.json", &scene), DQKIT_ERR_IO);
}

TEST(CApi, ReferencePrograms) {
  int iterations = 0;
  double error = 0;
  ASSERT_EQ(dqkit_regress_pose_regulation(&iterations, &error), DQKIT_OK);
  EXPECT_EQ(iterations, 809);
  EXPECT_LT(error, 1e-3);
  double mean = 0, sd = 0;
  ASSERT_EQ(dqkit_bench_mul(10000, &mean, &sd), DQKIT_OK);
  EXPECT_GT(mean, 0);
  EXPECT_EQ(dqkit_bench_mul(0, &mean, &sd), DQKIT_ERR_DOMAIN);
}

}  // namespace
