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


#include "dqkit/robots.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "dqkit/errors.hpp"
#include "test_support.hpp"

namespace dqkit {
namespace {

namespace fs = std::filesystem;
using testing::Random;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "dqkit_robots_test";
  fs::create_directories(dir);
  return dir;
}

void expect_same_kinematics(const Kinematics& a, const Kinematics& b) {
  ASSERT_EQ(a.dof(), b.dof());
  Random rnd(81);
  for (int k = 0; k < 20; ++k) {
    const VectorXd q = rnd.vector(a.dof());
    EXPECT_EQ(a.fkm(q), b.fkm(q));
  }
}

TEST(Catalog, Dof) {
  EXPECT_EQ(lwr4_kinematics()->dof(), 7);
  EXPECT_EQ(youbot_kinematics()->dof(), 8);
  EXPECT_EQ(differential_drive_kinematics()->dof(), 3);
  auto youbot = youbot_kinematics();
  ASSERT_EQ(youbot->chain_count(), 2);
  const auto& base = dynamic_cast<const MobileBase&>(youbot->chain(0));
  EXPECT_EQ(base.kind(), MobileBaseKind::kHolonomic);
  EXPECT_GT(base.base_diameter(), 0);
}

TEST(Files, RoundTrip) {
  const fs::path dir = scratch_dir();
  const std::shared_ptr<const Kinematics> robots[] = {lwr4_kinematics(), youbot_kinematics(),
                                                      differential_drive_kinematics()};
  int k = 0;
  for (const auto& robot : robots) {
    const fs::path path = dir / ("robot" + std::to_string(k++) + ".json");
    save_robot(*robot, path);
    const auto loaded = load_robot(path);
    expect_same_kinematics(*robot, *loaded);
    EXPECT_EQ(serialize_robot(*loaded), serialize_robot(*robot));
  }
}

TEST(Files, FramesSurviveRoundTrip) {
  auto lwr4 = lwr4_kinematics();
  Random rnd(82);
  lwr4->set_base_frame(rnd.pose());
  lwr4->set_reference_frame(rnd.pose());
  const auto loaded = parse_robot(serialize_robot(*lwr4));
  expect_same_kinematics(*lwr4, *loaded);
}

TEST(Files, Errors) {
  EXPECT_THROW(parse_robot(R"({"kind": "serial", "dh": {"theta": [], "d": [], "a": [],
                                "alpha": []}})"),
               ModelFileError);
  EXPECT_THROW(parse_robot(R"({"kind": "serial", "dh": {"theta": [0, 0], "d": [0], "a": [0],
                                "alpha": [0]}})"),
               ModelFileError);
  EXPECT_THROW(parse_robot("{ not json"), ModelFileError);
  EXPECT_THROW(parse_robot(R"({"kind": "teleporter"})"), ModelFileError);
  EXPECT_THROW(parse_robot(R"({"kind": "holonomic_base", "frame_displacement": [2,0,0,0,0,0,0,0]})"),
               ModelFileError);
  EXPECT_THROW(parse_robot(R"({"kind": "differential_base", "wheel_radius": -1,
                                "axis_length": 0.2})"),
               ModelFileError);
  EXPECT_THROW(load_robot(scratch_dir() / "missing.json"), IOError);
}

TEST(Files, ErrorNamesTheField) {
  try {
    parse_robot(R"({"kind": "serial", "dh": {"theta": [0], "d": ["x"], "a": [0], "alpha": [0]}})");
    FAIL();
  } catch (const ModelFileError& e) {
    EXPECT_NE(std::string(e.what()).find("dh.d"), std::string::npos) << e.what();
  }
}

TEST(Files, WholeBodyWithFileChildren) {
  const fs::path dir = scratch_dir();
  save_robot(*lwr4_kinematics(), dir / "arm.json");
  std::ofstream(dir / "pair.json") << R"({"kind": "wholebody", "children": [
      {"file": "arm.json"}, {"file": "arm.json", "reversed": true}]})";
  const auto pair = load_robot(dir / "pair.json");
  ASSERT_EQ(pair->dof(), 14);
  const auto& wb = dynamic_cast<const WholeBody&>(*pair);
  EXPECT_FALSE(wb.is_reversed(0));
  EXPECT_TRUE(wb.is_reversed(1));
  std::ofstream(dir / "bad.json") << R"({"kind": "wholebody", "children": [
      {"file": "arm.json", "reversed": true}]})";
  EXPECT_THROW(load_robot(dir / "bad.json"), ModelFileError);
}

}  // namespace
}  // namespace dqkit
