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

// Batch simulation of the whiteboard scene.
//
// A fixed manipulator holds a whiteboard that swings around its base while a
// mobile manipulator follows it with a pen. The mobile manipulator runs a
// constrained QP controller that keeps its base disk away from one wall and a
// set of vertical cylinders; the fixed arm runs a pseudoinverse tracker.

#ifndef DQKIT_SIM_HPP_
#define DQKIT_SIM_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dqkit/control.hpp"
#include "dqkit/kinematics.hpp"

namespace dqkit {

struct Cylinder {
  Line axis;
  double radius;
};

struct TrajectoryParams {
  double omega_n = 0.1;  // rad/s, swing about the vertical axis
  double omega_d = 0.5;  // rad/s, radial oscillation
  double d_z = 0.1;      // m, radial oscillation amplitude
};

struct ControllerGains {
  double gain = 1.0;
  double damping = KinematicController::kDefaultDamping;
};

struct Scene {
  std::shared_ptr<const Kinematics> manipulator;
  VectorXd manipulator_q0;
  ControllerGains manipulator_gains;

  // First chain must be a MobileBase; its pose gives the disk center.
  std::shared_ptr<const WholeBody> mobile_manipulator;
  VectorXd mobile_q0;
  ControllerGains mobile_gains;

  Plane wall = Plane::from_dual_quaternion(k_);
  std::vector<Cylinder> cylinders;
  double robot_radius = 0.0;  // R3
  // One gain per obstacle, wall first. Missing entries default to 1.
  std::vector<double> eta_d;
  // Added to every safe distance.
  double safe_margin = 0.0;

  TrajectoryParams trajectory;
  double sampling_time = 0.05;
  double total_time = 200.0;

  int obstacle_count() const { return 1 + static_cast<int>(cylinders.size()); }
  double eta(int obstacle) const;
  // Throws DomainError on invalid values.
  void validate() const;
};

// Scene JSON:
//   {
//     "robots": [{"role": "manipulator", "model": "kuka_lwr4.json", "q0": [...],
//                 "gain": 10, "damping": 0.01},
//                {"role": "mobile_manipulator", "model": "kuka_youbot.json", ...}],
//     "obstacles": {"plane": {"normal": [3], "point": [3]},
//                   "cylinders": [{"direction": [3], "point": [3], "radius": m}]},
//     "robot_radius": m,            // optional, defaults to half the base diameter
//     "trajectory": {"omega_n": .., "omega_d": .., "d_z": ..},
//     "constraints": {"eta_d": [...], "safe_margin": m},
//     "simulation": {"sampling_time": s, "total_time": s}
//   }
// Model paths resolve against the scene directory, then the model directory.
Scene load_scene(const std::filesystem::path& path);
Scene parse_scene(const std::string& json_text, const std::filesystem::path& base_dir = {});

struct Reference {
  DualQuaternion x;
  Vector8d x_dot;
};

// x_m(t) = r_m(t) x_m(0) p_m(t) and its time derivative.
Reference compute_lwr4_reference(const TrajectoryParams& params, const DualQuaternion& x0,
                                 double t);
// 1 + E 0.5 * 0.015 k
DualQuaternion pen_offset();
// x_mm = x_m pen_offset() j and its derivative. DomainError for non-unit x_m.
Reference compute_youbot_reference(const Reference& manipulator_reference);

struct ConstraintRows {
  MatrixXd A;  // one row per obstacle, wall first
  VectorXd a;
  // d - d_safe in plain meters, same order.
  VectorXd clearance;
};

// Rows of -J_d u <= eta_d d~ for the disk center of the mobile base, which is
// the base pose without the arm mounting displacement projected to z = 0. The wall
// uses the signed distance with d_safe = R3 + margin; cylinders use the squared
// distance with d_safe = (R_i + R3 + margin)^2.
ConstraintRows compute_constraints(const Scene& scene, const WholeBody& chain, const VectorXd& q);

struct SimReport {
  std::vector<double> t;
  std::vector<VectorXd> q_manipulator;
  std::vector<VectorXd> q_mobile;
  std::vector<double> error_manipulator;
  std::vector<double> error_mobile;
  std::vector<VectorXd> clearance;  // per tick, one entry per obstacle
  std::vector<Vector3d> pen;        // pen tip in the whiteboard frame
  std::vector<bool> drawing;
  std::vector<Vector3d> base_center;

  // Copied from the scene for plotting.
  Plane wall = Plane::from_dual_quaternion(k_);
  std::vector<Cylinder> cylinders;
  double robot_radius = 0.0;

  size_t rows() const { return t.size(); }
  // Smallest clearance of one obstacle over the run; +inf when empty.
  double min_clearance(int obstacle) const;
};

// Pen counts as drawing within this distance of the whiteboard surface.
inline constexpr double kDrawingTolerance = 0.002;

// floor(total_time / sampling_time) + 1 ticks, or none for total_time == 0.
// InfeasibleError from the QP is rethrown with the tick index.
SimReport run_simulation(const Scene& scene);

std::vector<std::string> csv_header(const SimReport& report);
void emit_csv(const SimReport& report, const std::filesystem::path& path);
std::string to_csv(const SimReport& report);
void emit_svg_topview(const SimReport& report, const std::filesystem::path& path);
std::string to_svg_topview(const SimReport& report);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// --- reference programs ------------------------------------------------------------

struct RegressionResult {
  int iterations = 0;
  double final_error = 0.0;
  bool converged = false;
};

// Pose regulation of the LWR4 from q = (0, 0.3770, 0.1257, -0.5655, 0, 0, 0)
// to the pose r = cos(pi/2) + j sin(pi/2), p = 0.1i + 0.2j + 0.3k with an
// undamped pseudoinverse, gain 10 and T = 0.001 until |vec8(x - xd)| <= 1e-3.
RegressionResult run_pose_regulation(const Kinematics& lwr4, int max_iterations = 1000000);
DualQuaternion pose_regulation_target();

struct BenchResult {
  double mean_us = 0.0;
  double stddev_us = 0.0;
  int sets = 0;
  long long multiplications = 0;
};

// Times `iterations` products in sets of 1000. Operands are drawn before each
// set and stay outside the timed region.
BenchResult bench_multiplication(long long iterations, unsigned seed = 1);

}  // namespace dqkit

#endif  // DQKIT_SIM_HPP_
