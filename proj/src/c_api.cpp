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

#include "dqkit/dqkit.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "dqkit/errors.hpp"
#include "dqkit/robots.hpp"
#include "dqkit/sim.hpp"

struct dqkit_robot {
  std::shared_ptr<dqkit::Kinematics> kinematics;
};

struct dqkit_scene {
  dqkit::Scene scene;
};

struct dqkit_report {
  dqkit::SimReport report;
};

namespace {

using dqkit::DualQuaternion;

thread_local std::string g_last_error;

dqkit_status fail(dqkit_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <typename F>
dqkit_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DQKIT_OK;
  } catch (const dqkit::InfeasibleError& e) {
    return fail(DQKIT_ERR_INFEASIBLE, e.what());
  } catch (const dqkit::MaxIterationsError& e) {
    return fail(DQKIT_ERR_MAX_ITERATIONS, e.what());
  } catch (const dqkit::DimensionError& e) {
    return fail(DQKIT_ERR_DIMENSION, e.what());
  } catch (const dqkit::NotSetError& e) {
    return fail(DQKIT_ERR_NOT_SET, e.what());
  } catch (const dqkit::ModelFileError& e) {
    return fail(DQKIT_ERR_MODEL_FILE, e.what());
  } catch (const dqkit::IOError& e) {
    return fail(DQKIT_ERR_IO, e.what());
  } catch (const dqkit::DomainError& e) {
    return fail(DQKIT_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DQKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DQKIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DQKIT_ERR_INTERNAL, "unknown error");
  }
}

template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

DualQuaternion load(const double a[8]) {
  return DualQuaternion(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]);
}

void store(const DualQuaternion& x, double out[8]) {
  for (int i = 0; i < 8; ++i) out[i] = x[i];
}

template <typename Op>
dqkit_status unary(const double a[8], double out[8], Op op) {
  if (any_null(a, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { store(op(load(a)), out); });
}

template <typename Op>
dqkit_status binary(const double a[8], const double b[8], double out[8], Op op) {
  if (any_null(a, b, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { store(op(load(a), load(b)), out); });
}

dqkit::VectorXd configuration(const double* q, size_t n) {
  return Eigen::Map<const dqkit::VectorXd>(q, static_cast<Eigen::Index>(n));
}

}  // namespace

extern "C" {

const char* dqkit_version(void) { return "1.0.0"; }

const char* dqkit_last_error(void) { return g_last_error.c_str(); }

const char* dqkit_status_string(dqkit_status status) {
  switch (status) {
    case DQKIT_OK: return "ok";
    case DQKIT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DQKIT_ERR_DOMAIN: return "domain error";
    case DQKIT_ERR_DIMENSION: return "dimension error";
    case DQKIT_ERR_NOT_SET: return "not set";
    case DQKIT_ERR_INFEASIBLE: return "infeasible";
    case DQKIT_ERR_MAX_ITERATIONS: return "iteration limit reached";
    case DQKIT_ERR_MODEL_FILE: return "model file error";
    case DQKIT_ERR_IO: return "i/o error";
    case DQKIT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dqkit_status dqkit_dq_add(const double a[8], const double b[8], double out[8]) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x + y; });
}

dqkit_status dqkit_dq_sub(const double a[8], const double b[8], double out[8]) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x - y; });
}

dqkit_status dqkit_dq_mul(const double a[8], const double b[8], double out[8]) {
  return binary(a, b, out, [](const auto& x, const auto& y) { return x * y; });
}

dqkit_status dqkit_dq_conj(const double a[8], double out[8]) {
  return unary(a, out, [](const auto& x) { return dqkit::conj(x); });
}

dqkit_status dqkit_dq_inv(const double a[8], double out[8]) {
  return unary(a, out, [](const auto& x) { return dqkit::inv(x); });
}

dqkit_status dqkit_dq_norm(const double a[8], double out[8]) {
  return unary(a, out, [](const auto& x) { return dqkit::norm(x); });
}

dqkit_status dqkit_dq_exp(const double a[8], double out[8]) {
  return unary(a, out, [](const auto& x) { return dqkit::exp(x); });
}

dqkit_status dqkit_dq_log(const double a[8], double out[8]) {
  return unary(a, out, [](const auto& x) { return dqkit::log(x); });
}

dqkit_status dqkit_dq_pow(const double a[8], double exponent, double out[8]) {
  return unary(a, out, [exponent](const auto& x) { return dqkit::pow(x, exponent); });
}

dqkit_status dqkit_dq_pose(const double rotation[4], const double translation[3],
                           double out[8]) {
  if (any_null(rotation, translation, out)) {
    return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    const DualQuaternion r(rotation[0], rotation[1], rotation[2], rotation[3]);
    const DualQuaternion p(0.0, translation[0], translation[1], translation[2]);
    store(dqkit::make_pose(r, p), out);
  });
}

dqkit_status dqkit_dq_translation(const double a[8], double out[3]) {
  if (any_null(a, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const dqkit::Vector3d t = dqkit::vec3(dqkit::translation(load(a)));
    std::copy(t.data(), t.data() + 3, out);
  });
}

dqkit_status dqkit_dq_rotation(const double a[8], double out[4]) {
  if (any_null(a, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const dqkit::Vector4d r = dqkit::vec4(dqkit::rotation(load(a)));
    std::copy(r.data(), r.data() + 4, out);
  });
}

dqkit_status dqkit_dq_is_unit(const double a[8], int* out) {
  if (any_null(a, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = dqkit::is_unit(load(a)) ? 1 : 0; });
}

dqkit_status dqkit_dq_to_string(const double a[8], char* buffer, size_t capacity,
                                size_t* required) {
  if (a == nullptr) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const std::string s = dqkit::to_string(load(a));
    if (required != nullptr) *required = s.size() + 1;
    if (buffer != nullptr && capacity > 0) {
      const size_t n = std::min(capacity - 1, s.size());
      std::memcpy(buffer, s.data(), n);
      buffer[n] = '\0';
    }
  });
}

dqkit_status dqkit_robot_load(const char* path, dqkit_robot** out) {
  if (any_null(path, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new dqkit_robot{dqkit::load_robot(path)}; });
}

dqkit_status dqkit_robot_catalog(const char* name, dqkit_robot** out) {
  if (any_null(name, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  const std::string n = name;
  if (n != "lwr4" && n != "youbot" && n != "differential_drive") {
    return fail(DQKIT_ERR_INVALID_ARGUMENT, "unknown catalog robot '" + n + "'");
  }
  return guarded([&] {
    std::shared_ptr<dqkit::Kinematics> k;
    if (n == "lwr4") k = dqkit::lwr4_kinematics();
    if (n == "youbot") k = dqkit::youbot_kinematics();
    if (n == "differential_drive") k = dqkit::differential_drive_kinematics();
    *out = new dqkit_robot{std::move(k)};
  });
}

void dqkit_robot_free(dqkit_robot* robot) { delete robot; }

dqkit_status dqkit_robot_dof(const dqkit_robot* robot, int* out) {
  if (any_null(robot, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = robot->kinematics->dof();
  return DQKIT_OK;
}

dqkit_status dqkit_robot_fkm(const dqkit_robot* robot, const double* q, size_t q_len,
                             double out[8]) {
  if (any_null(robot, out) || (q == nullptr && q_len > 0)) {
    return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] { store(robot->kinematics->fkm(configuration(q, q_len)), out); });
}

dqkit_status dqkit_robot_pose_jacobian(const dqkit_robot* robot, const double* q, size_t q_len,
                                       double* out, size_t out_len) {
  if (any_null(robot, out) || (q == nullptr && q_len > 0)) {
    return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  const size_t needed = 8 * static_cast<size_t>(robot->kinematics->dof());
  if (out_len < needed) {
    return fail(DQKIT_ERR_DIMENSION, "output buffer needs " + std::to_string(needed) + " doubles");
  }
  return guarded([&] {
    const dqkit::MatrixXd j = robot->kinematics->pose_jacobian(configuration(q, q_len));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        out, j.rows(), j.cols()) = j;
  });
}

dqkit_status dqkit_scene_load(const char* path, dqkit_scene** out) {
  if (any_null(path, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new dqkit_scene{dqkit::load_scene(path)}; });
}

void dqkit_scene_free(dqkit_scene* scene) { delete scene; }

dqkit_status dqkit_scene_set_timing(dqkit_scene* scene, double sampling_time, double total_time) {
  if (scene == nullptr) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  dqkit::Scene updated = scene->scene;
  if (sampling_time >= 0.0) updated.sampling_time = sampling_time;
  if (total_time >= 0.0) updated.total_time = total_time;
  const dqkit_status status = guarded([&] { updated.validate(); });
  if (status == DQKIT_OK) scene->scene = std::move(updated);
  return status;
}

dqkit_status dqkit_simulate(const dqkit_scene* scene, dqkit_report** out) {
  if (any_null(scene, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new dqkit_report{dqkit::run_simulation(scene->scene)}; });
}

void dqkit_report_free(dqkit_report* report) { delete report; }

dqkit_status dqkit_report_rows(const dqkit_report* report, size_t* out) {
  if (any_null(report, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = report->report.rows();
  return DQKIT_OK;
}

dqkit_status dqkit_report_obstacles(const dqkit_report* report, int* out) {
  if (any_null(report, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  *out = 1 + static_cast<int>(report->report.cylinders.size());
  return DQKIT_OK;
}

dqkit_status dqkit_report_min_clearance(const dqkit_report* report, int obstacle, double* out) {
  if (any_null(report, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  if (obstacle < 0 || obstacle > static_cast<int>(report->report.cylinders.size())) {
    return fail(DQKIT_ERR_DIMENSION, "obstacle index out of range");
  }
  *out = report->report.min_clearance(obstacle);
  return DQKIT_OK;
}

dqkit_status dqkit_report_max_manipulator_error(const dqkit_report* report, double* out) {
  if (any_null(report, out)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  const auto& e = report->report.error_manipulator;
  *out = e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
  return DQKIT_OK;
}

dqkit_status dqkit_report_write_csv(const dqkit_report* report, const char* path) {
  if (any_null(report, path)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { dqkit::emit_csv(report->report, path); });
}

dqkit_status dqkit_report_write_svg(const dqkit_report* report, const char* path) {
  if (any_null(report, path)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { dqkit::emit_svg_topview(report->report, path); });
}

dqkit_status dqkit_regress_pose_regulation(int* iterations, double* final_error) {
  if (any_null(iterations, final_error)) {
    return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guarded([&] {
    const auto result = dqkit::run_pose_regulation(*dqkit::lwr4_kinematics());
    *iterations = result.iterations;
    *final_error = result.final_error;
    if (!result.converged) throw dqkit::MaxIterationsError("pose regulation did not converge");
  });
}

dqkit_status dqkit_bench_mul(long long iterations, double* mean_us, double* stddev_us) {
  if (any_null(mean_us, stddev_us)) return fail(DQKIT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const auto result = dqkit::bench_multiplication(iterations);
    *mean_us = result.mean_us;
    *stddev_us = result.stddev_us;
  });
}

}  // extern "C"
