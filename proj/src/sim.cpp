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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dqkit/errors.hpp"
#include "dqkit/robots.hpp"

namespace dqkit {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void scene_error(const std::string& where, const std::string& what) {
  throw ModelFileError("scene " + where + ": " + what);
}

DualQuaternion vector3_field(const json& node, const char* field, const std::string& where) {
  const std::string w = where + "." + field;
  if (!node.contains(field) || !node.at(field).is_array() || node.at(field).size() != 3) {
    scene_error(w, "expected 3 numbers");
  }
  Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!node.at(field)[i].is_number()) scene_error(w, "expected 3 numbers");
    v(i) = node.at(field)[i].get<double>();
  }
  return from_vec3(v);
}

VectorXd vector_field(const json& node, const char* field, const std::string& where) {
  const std::string w = where + "." + field;
  if (!node.contains(field) || !node.at(field).is_array()) scene_error(w, "expected an array");
  const json& arr = node.at(field);
  VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) scene_error(w, "expected numbers");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

double number_field(const json& node, const char* field, double fallback) {
  if (!node.contains(field)) return fallback;
  if (!node.at(field).is_number()) scene_error(field, "expected a number");
  return node.at(field).get<double>();
}

std::shared_ptr<Kinematics> resolve_model(const std::string& ref, const fs::path& base_dir) {
  const fs::path local = base_dir / ref;
  if (fs::exists(local)) return load_robot(local);
  return load_robot(model_directory() / ref);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path.string());
  out << text;
  if (!out) throw IOError("failed writing " + path.string());
}

const MobileBase& base_of(const WholeBody& chain) {
  const auto* base = dynamic_cast<const MobileBase*>(&chain.chain(0));
  if (base == nullptr) throw DomainError("first chain of the mobile manipulator is not a base");
  return *base;
}

}  // namespace

double Scene::eta(int obstacle) const {
  return obstacle < static_cast<int>(eta_d.size()) ? eta_d[obstacle] : 1.0;
}

void Scene::validate() const {
  if (!manipulator || !mobile_manipulator) throw DomainError("scene needs both robots");
  if (manipulator_q0.size() != manipulator->dof()) {
    throw DimensionError("manipulator q0 has the wrong size");
  }
  if (mobile_q0.size() != mobile_manipulator->dof()) {
    throw DimensionError("mobile manipulator q0 has the wrong size");
  }
  base_of(*mobile_manipulator);
  if (!(robot_radius > 0.0)) throw DomainError("robot radius must be positive");
  for (const auto& c : cylinders) {
    if (!(c.radius > 0.0)) throw DomainError("cylinder radius must be positive");
  }
  for (double e : eta_d) {
    if (!(e >= 0.0)) throw DomainError("eta_d must be nonnegative");
  }
  if (!(safe_margin >= 0.0)) throw DomainError("safe margin must be nonnegative");
  if (!(sampling_time > 0.0)) throw DomainError("sampling time must be positive");
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
    throw DomainError("total time must be finite and nonnegative");
  }
}

Scene parse_scene(const std::string& json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelFileError(std::string("malformed scene: ") + e.what());
  }
  Scene scene;
  try {
    if (!root.contains("robots") || !root.at("robots").is_array()) {
      scene_error("robots", "missing robot list");
    }
    for (const auto& r : root.at("robots")) {
      const std::string role = r.value("role", "");
      const std::string where = "robots[" + role + "]";
      if (!r.contains("model")) scene_error(where + ".model", "missing");
      auto model = resolve_model(r.at("model").get<std::string>(), base_dir);
      const VectorXd q0 = r.contains("q0") ? vector_field(r, "q0", where)
                                           : VectorXd(VectorXd::Zero(model->dof()));
      const ControllerGains gains{number_field(r, "gain", 1.0),
                                  number_field(r, "damping", KinematicController::kDefaultDamping)};
      if (role == "manipulator") {
        scene.manipulator = model;
        scene.manipulator_q0 = q0;
        scene.manipulator_gains = gains;
      } else if (role == "mobile_manipulator") {
        auto body = std::dynamic_pointer_cast<const WholeBody>(model);
        if (!body) scene_error(where, "mobile manipulator must be a whole-body model");
        scene.mobile_manipulator = body;
        scene.mobile_q0 = q0;
        scene.mobile_gains = gains;
      } else {
        scene_error(where + ".role", "expected manipulator or mobile_manipulator");
      }
    }

    const json& obstacles = root.at("obstacles");
    const json& plane = obstacles.at("plane");
    scene.wall = make_plane(vector3_field(plane, "normal", "obstacles.plane"),
                            vector3_field(plane, "point", "obstacles.plane"));
    if (obstacles.contains("cylinders")) {
      int i = 0;
      for (const auto& c : obstacles.at("cylinders")) {
        const std::string where = "obstacles.cylinders[" + std::to_string(i++) + "]";
        scene.cylinders.push_back(
            {make_line(vector3_field(c, "direction", where),
                       vector3_field(c, "point", where)),
             number_field(c, "radius", 0.0)});
      }
    }

    if (root.contains("robot_radius")) {
      scene.robot_radius = number_field(root, "robot_radius", 0.0);
    } else if (scene.mobile_manipulator) {
      scene.robot_radius = 0.5 * base_of(*scene.mobile_manipulator).base_diameter();
    }

    if (root.contains("trajectory")) {
      const json& t = root.at("trajectory");
      scene.trajectory.omega_n = number_field(t, "omega_n", scene.trajectory.omega_n);
      scene.trajectory.omega_d = number_field(t, "omega_d", scene.trajectory.omega_d);
      scene.trajectory.d_z = number_field(t, "d_z", scene.trajectory.d_z);
    }
    if (root.contains("constraints")) {
      const json& c = root.at("constraints");
      if (c.contains("eta_d")) {
        const VectorXd eta = vector_field(c, "eta_d", "constraints");
        scene.eta_d.assign(eta.data(), eta.data() + eta.size());
      }
      scene.safe_margin = number_field(c, "safe_margin", 0.0);
    }
    if (root.contains("simulation")) {
      const json& s = root.at("simulation");
      scene.sampling_time = number_field(s, "sampling_time", scene.sampling_time);
      scene.total_time = number_field(s, "total_time", scene.total_time);
    }
  } catch (const json::exception& e) {
    throw ModelFileError(std::string("scene: ") + e.what());
  }
  try {
    scene.validate();
  } catch (const Error& e) {
    throw ModelFileError(std::string("scene: ") + e.what());
  }
  return scene;
}

Scene load_scene(const fs::path& path) {
  return parse_scene(read_file(path), path.parent_path());
}

Reference compute_lwr4_reference(const TrajectoryParams& params, const DualQuaternion& x0,
                                 double t) {
  const double phi = 0.5 * kPi * std::sin(params.omega_n * t);
  const double phi_dot = 0.5 * kPi * params.omega_n * std::cos(params.omega_n * t);
  const DualQuaternion r = std::cos(0.5 * phi) + k_ * std::sin(0.5 * phi);
  const DualQuaternion r_dot =
      0.5 * phi_dot * (-std::sin(0.5 * phi) + k_ * std::cos(0.5 * phi));
  const double half_dz = 0.5 * params.d_z;
  const DualQuaternion p = 1.0 + E_ * half_dz * std::cos(params.omega_d * t) * k_;
  const DualQuaternion p_dot = E_ * (-half_dz * params.omega_d * std::sin(params.omega_d * t)) * k_;
  return {r * x0 * p, vec8(r_dot * x0 * p + r * x0 * p_dot)};
}

DualQuaternion pen_offset() { return 1.0 + E_ * 0.5 * 0.015 * k_; }

Reference compute_youbot_reference(const Reference& manipulator_reference) {
  if (!is_unit(manipulator_reference.x)) {
    throw DomainError("manipulator reference is not a unit dual quaternion");
  }
  const DualQuaternion c = pen_offset() * j_;
  return {manipulator_reference.x * c, haminus8(c) * manipulator_reference.x_dot};
}

ConstraintRows compute_constraints(const Scene& scene, const WholeBody& chain, const VectorXd& q) {
  const int n = chain.dof();
  // Base center: undo the arm mounting displacement.
  const DualQuaternion undo = conj(base_of(chain).frame_displacement());
  const DualQuaternion x_base = chain.fkm(q, 0) * undo;
  MatrixXd jt = translation_jacobian(haminus8(undo) * chain.pose_jacobian(q, 0), x_base);
  jt.row(3).setZero();
  Vector4d p = vec4(translation(x_base));
  p(3) = 0.0;
  const DualQuaternion center = DualQuaternion::from_vec(p);

  const int m = scene.obstacle_count();
  ConstraintRows rows{MatrixXd(m, n), VectorXd(m), VectorXd(m)};

  const double wall_safe = scene.robot_radius + scene.safe_margin;
  const double d_wall = point_to_plane_distance(center, scene.wall);
  rows.A.row(0) = -point_to_plane_distance_jacobian(jt, center, scene.wall);
  rows.a(0) = scene.eta(0) * (d_wall - wall_safe);
  rows.clearance(0) = d_wall - wall_safe;

  for (int i = 0; i < static_cast<int>(scene.cylinders.size()); ++i) {
    const Cylinder& cyl = scene.cylinders[i];
    const double safe = cyl.radius + scene.robot_radius + scene.safe_margin;
    const double d2 = point_to_line_squared_distance(center, cyl.axis);
    rows.A.row(i + 1) = -point_to_line_distance_jacobian(jt, center, cyl.axis);
    rows.a(i + 1) = scene.eta(i + 1) * (d2 - safe * safe);
    rows.clearance(i + 1) = std::sqrt(d2) - safe;
  }
  return rows;
}

double SimReport::min_clearance(int obstacle) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : clearance) best = std::min(best, c(obstacle));
  return best;
}

SimReport run_simulation(const Scene& scene) {
  scene.validate();
  SimReport report;
  report.wall = scene.wall;
  report.cylinders = scene.cylinders;
  report.robot_radius = scene.robot_radius;

  PseudoinverseController arm(scene.manipulator);
  arm.set_control_objective(ControlObjective::kPose);
  arm.set_gain(scene.manipulator_gains.gain);
  arm.set_damping(scene.manipulator_gains.damping);

  ClassicQPController mobile(scene.mobile_manipulator);
  mobile.set_control_objective(ControlObjective::kPose);
  mobile.set_gain(scene.mobile_gains.gain);
  mobile.set_damping(scene.mobile_gains.damping);

  if (scene.total_time <= 0.0) return report;
  const long long ticks =
      static_cast<long long>(std::floor(scene.total_time / scene.sampling_time + 1e-9)) + 1;

  const DualQuaternion x0 = scene.manipulator->fkm(scene.manipulator_q0);
  VectorXd q_arm = scene.manipulator_q0;
  VectorXd q_mobile = scene.mobile_q0;

  for (long long k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * scene.sampling_time;
    const Reference arm_ref = compute_lwr4_reference(scene.trajectory, x0, t);
    const Reference mobile_ref = compute_youbot_reference(arm_ref);

    const VectorXd u_arm =
        arm.compute_tracking_control_signal(q_arm, vec8(arm_ref.x), arm_ref.x_dot);

    const ConstraintRows rows = compute_constraints(scene, *scene.mobile_manipulator, q_mobile);
    mobile.set_inequality_constraint(rows.A, rows.a);
    VectorXd u_mobile;
    try {
      u_mobile = mobile.compute_tracking_control_signal(q_mobile, vec8(mobile_ref.x),
                                                        mobile_ref.x_dot);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("tick " + std::to_string(k) + " (t = " + format_double(t) +
                            "): " + e.what());
    }

    const DualQuaternion x_arm = scene.manipulator->fkm(q_arm);
    const DualQuaternion x_mobile = scene.mobile_manipulator->fkm(q_mobile);
    const Vector3d pen = vec3(translation(conj(x_arm) * x_mobile));
    const DualQuaternion undo =
        conj(base_of(*scene.mobile_manipulator).frame_displacement());
    const Vector4d center = vec4(translation(scene.mobile_manipulator->fkm(q_mobile, 0) * undo));

    report.t.push_back(t);
    report.q_manipulator.push_back(q_arm);
    report.q_mobile.push_back(q_mobile);
    report.error_manipulator.push_back(vec8(x_arm - arm_ref.x).norm());
    report.error_mobile.push_back(vec8(x_mobile - mobile_ref.x).norm());
    report.clearance.push_back(rows.clearance);
    report.pen.push_back(pen);
    report.drawing.push_back(std::abs(pen(2) - 0.015) <= kDrawingTolerance);
    report.base_center.push_back(Vector3d(center(1), center(2), 0.0));

    q_arm += scene.sampling_time * u_arm;
    q_mobile += scene.sampling_time * u_mobile;
  }
  return report;
}

// --- output --------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(const SimReport& report) {
  const int n_arm = report.q_manipulator.empty() ? 7 : report.q_manipulator[0].size();
  const int n_mobile = report.q_mobile.empty() ? 8 : report.q_mobile[0].size();
  const int n_cyl = static_cast<int>(report.cylinders.size());
  std::vector<std::string> h{"t"};
  for (int i = 1; i <= n_arm; ++i) h.push_back("q_lwr4_" + std::to_string(i));
  for (int i = 1; i <= n_mobile; ++i) h.push_back("q_youbot_" + std::to_string(i));
  h.insert(h.end(), {"err_lwr4", "err_youbot", "dtilde_plane"});
  for (int i = 1; i <= n_cyl; ++i) h.push_back("dtilde_cyl" + std::to_string(i));
  h.insert(h.end(), {"pen_x", "pen_y", "pen_z"});
  return h;
}

std::string to_csv(const SimReport& report) {
  std::string out;
  const auto header = csv_header(report);
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (size_t r = 0; r < report.rows(); ++r) {
    std::vector<double> row{report.t[r]};
    for (double v : report.q_manipulator[r]) row.push_back(v);
    for (double v : report.q_mobile[r]) row.push_back(v);
    row.push_back(report.error_manipulator[r]);
    row.push_back(report.error_mobile[r]);
    for (double v : report.clearance[r]) row.push_back(v);
    for (double v : report.pen[r]) row.push_back(v);
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const SimReport& report, const fs::path& path) {
  write_file(path, to_csv(report));
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw IOError("bad CSV number '" + f + "'");
      }
      row.push_back(v);
    }
    if (row.size() != table.header.size()) throw IOError("ragged CSV row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_svg_topview(const SimReport& report) {
  // World bounds in meters.
  double xmin = -0.5, xmax = 0.5, ymin = -0.5, ymax = 0.5;
  const auto grow = [&](double x, double y, double r) {
    xmin = std::min(xmin, x - r);
    xmax = std::max(xmax, x + r);
    ymin = std::min(ymin, y - r);
    ymax = std::max(ymax, y + r);
  };
  for (const auto& c : report.base_center) grow(c(0), c(1), report.robot_radius);
  std::vector<Vector3d> centers;
  for (const auto& cyl : report.cylinders) {
    const Vector3d c = vec3(cyl.axis.closest_point_to_origin());
    centers.push_back(c);
    grow(c(0), c(1), cyl.radius);
  }
  const double margin = 0.25;
  xmin -= margin;
  ymin -= margin;
  xmax += margin;
  ymax += margin;
  const double scale = 400.0;  // px per meter
  const double w = (xmax - xmin) * scale;
  const double h = (ymax - ymin) * scale;
  const auto px = [&](double x) { return format_double(std::round((x - xmin) * scale * 10) / 10); };
  const auto py = [&](double y) { return format_double(std::round((ymax - y) * scale * 10) / 10); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(std::round(w))
    << "\" height=\"" << format_double(std::round(h)) << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Wall: n.x x + n.y y = d within the view.
  const Vector3d n = vec3(report.wall.normal());
  const double nxy = std::hypot(n(0), n(1));
  if (nxy > 1e-9) {
    const double d = report.wall.offset();
    const double span = 2.0 * (xmax - xmin + ymax - ymin);
    const double cx = d * n(0) / (nxy * nxy), cy = d * n(1) / (nxy * nxy);
    const double tx = -n(1) / nxy, ty = n(0) / nxy;
    s << "<line x1=\"" << px(cx - span * tx) << "\" y1=\"" << py(cy - span * ty) << "\" x2=\""
      << px(cx + span * tx) << "\" y2=\"" << py(cy + span * ty)
      << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
  }
  for (size_t i = 0; i < centers.size(); ++i) {
    s << "<circle cx=\"" << px(centers[i](0)) << "\" cy=\"" << py(centers[i](1)) << "\" r=\""
      << format_double(report.cylinders[i].radius * scale)
      << "\" fill=\"gray\" stroke=\"black\"/>\n";
  }
  s << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"6\" fill=\"orange\"/>\n";
  if (!report.base_center.empty()) {
    s << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < report.base_center.size(); ++i) {
      if (i) s << ' ';
      s << px(report.base_center[i](0)) << ',' << py(report.base_center[i](1));
    }
    s << "\"/>\n";
    for (const auto* c : {&report.base_center.front(), &report.base_center.back()}) {
      s << "<circle cx=\"" << px((*c)(0)) << "\" cy=\"" << py((*c)(1)) << "\" r=\""
        << format_double(report.robot_radius * scale)
        << "\" fill=\"none\" stroke=\"blue\" stroke-dasharray=\"4 4\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

void emit_svg_topview(const SimReport& report, const fs::path& path) {
  write_file(path, to_svg_topview(report));
}

// --- reference programs ------------------------------------------------------------

DualQuaternion pose_regulation_target() {
  const DualQuaternion r = std::cos(kPi / 2) + j_ * std::sin(kPi / 2);
  const DualQuaternion p = 0.1 * i_ + 0.2 * j_ + 0.3 * k_;
  return r + E_ * 0.5 * p * r;
}

RegressionResult run_pose_regulation(const Kinematics& lwr4, int max_iterations) {
  VectorXd q(7);
  q << 0, 0.3770, 0.1257, -0.5655, 0, 0, 0;
  const double T = 0.001;
  const double gain = 10;
  const DualQuaternion xd = pose_regulation_target();

  RegressionResult result;
  double e_norm = std::numeric_limits<double>::infinity();
  while (e_norm > 0.001 && result.iterations < max_iterations) {
    const MatrixXd J = lwr4.pose_jacobian(q);
    const DualQuaternion x = lwr4.fkm(q);
    const Vector8d e = vec8(x - xd);
    const VectorXd u = -damped_pseudoinverse(J, 0.0) * gain * e;
    q += T * u;
    e_norm = e.norm();
    ++result.iterations;
  }
  result.final_error = e_norm;
  result.converged = e_norm <= 0.001;
  return result;
}

BenchResult bench_multiplication(long long iterations, unsigned seed) {
  constexpr int kSetSize = 1000;
  if (iterations <= 0) throw DomainError("iterations must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<DualQuaternion> a(kSetSize), b(kSetSize), out(kSetSize);
  const auto draw = [&] {
    return DualQuaternion(dist(rng), dist(rng), dist(rng), dist(rng), dist(rng), dist(rng),
                          dist(rng), dist(rng));
  };

  BenchResult result;
  std::vector<double> per_set;
  long long remaining = iterations;
  while (remaining > 0) {
    const int count = static_cast<int>(std::min<long long>(kSetSize, remaining));
    for (int i = 0; i < count; ++i) {
      a[i] = draw();
      b[i] = draw();
    }
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < count; ++i) out[i] = a[i] * b[i];
    const auto stop = std::chrono::steady_clock::now();
    // Keep the products observable.
    asm volatile("" : : "g"(out.data()) : "memory");
    per_set.push_back(std::chrono::duration<double, std::micro>(stop - start).count() / count);
    remaining -= count;
    result.multiplications += count;
  }
  double mean = 0.0;
  for (double v : per_set) mean += v;
  mean /= static_cast<double>(per_set.size());
  double var = 0.0;
  for (double v : per_set) var += (v - mean) * (v - mean);
  result.mean_us = mean;
  result.stddev_us =
      per_set.size() > 1 ? std::sqrt(var / static_cast<double>(per_set.size() - 1)) : 0.0;
  result.sets = static_cast<int>(per_set.size());
  return result;
}

}  // namespace dqkit
