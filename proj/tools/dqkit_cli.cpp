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

// Command-line front end. Talks to the library only through dqkit.h.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqkit/dqkit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitFile = 3;

int report(dqkit_status status) {
  if (status == DQKIT_OK) return kExitOk;
  std::fprintf(stderr, "dqkit: %s: %s\n", dqkit_status_string(status), dqkit_last_error());
  switch (status) {
    case DQKIT_ERR_INFEASIBLE:
      return kExitInfeasible;
    case DQKIT_ERR_MODEL_FILE:
    case DQKIT_ERR_IO:
      return kExitFile;
    default:
      return kExitFailure;
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw CLI::ValidationError("--q", "not a number: " + item);
    }
    values.push_back(v);
  }
  return values;
}

std::string dq_text(const double x[8]) {
  size_t needed = 0;
  dqkit_dq_to_string(x, nullptr, 0, &needed);
  std::string s(needed, '\0');
  dqkit_dq_to_string(x, s.data(), s.size(), nullptr);
  s.resize(needed ? needed - 1 : 0);
  return s;
}

int run_simulate(const std::string& scene_path, double duration, double dt,
                 const std::string& csv_path, const std::string& svg_path) {
  dqkit_scene* scene = nullptr;
  if (int rc = report(dqkit_scene_load(scene_path.c_str(), &scene)); rc != kExitOk) return rc;
  int rc = report(dqkit_scene_set_timing(scene, dt, duration));
  dqkit_report* result = nullptr;
  if (rc == kExitOk) rc = report(dqkit_simulate(scene, &result));
  if (rc == kExitOk) rc = report(dqkit_report_write_csv(result, csv_path.c_str()));
  if (rc == kExitOk && !svg_path.empty()) {
    rc = report(dqkit_report_write_svg(result, svg_path.c_str()));
  }
  if (rc == kExitOk) {
    size_t rows = 0;
    int obstacles = 0;
    double max_err = 0.0;
    dqkit_report_rows(result, &rows);
    dqkit_report_obstacles(result, &obstacles);
    dqkit_report_max_manipulator_error(result, &max_err);
    std::printf("rows %zu\n", rows);
    for (int i = 0; i < obstacles; ++i) {
      double c = 0.0;
      dqkit_report_min_clearance(result, i, &c);
      std::printf("min clearance %s: %.6g m\n",
                  i == 0 ? "plane" : ("cylinder " + std::to_string(i)).c_str(), c);
    }
    std::printf("max manipulator error %.6g\n", max_err);
  }
  dqkit_report_free(result);
  dqkit_scene_free(scene);
  return rc;
}

int run_fkm(const std::string& model, const std::vector<double>& q) {
  dqkit_robot* robot = nullptr;
  if (int rc = report(dqkit_robot_load(model.c_str(), &robot)); rc != kExitOk) return rc;
  double x[8];
  const int rc = report(dqkit_robot_fkm(robot, q.data(), q.size(), x));
  if (rc == kExitOk) std::printf("%s\n", dq_text(x).c_str());
  dqkit_robot_free(robot);
  return rc;
}

int run_regression() {
  int iterations = 0;
  double error = 0.0;
  const int rc = report(dqkit_regress_pose_regulation(&iterations, &error));
  std::printf("iterations %d\nfinal error %.6g\n", iterations, error);
  return rc;
}

int run_bench(long long iterations) {
  double mean = 0.0, stddev = 0.0;
  const int rc = report(dqkit_bench_mul(iterations, &mean, &stddev));
  if (rc == kExitOk) std::printf("mean %.4f us\nstddev %.4f us\n", mean, stddev);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual quaternion kinematics toolkit"};
  app.require_subcommand(1);
  int rc = kExitOk;

  auto* simulate = app.add_subcommand("simulate", "Run a scene and write the time series");
  std::string scene_path, csv_path, svg_path;
  double duration = -1.0, dt = -1.0;
  simulate->add_option("--scene", scene_path, "Scene file")->required();
  simulate->add_option("--duration", duration, "Total simulated time in seconds");
  simulate->add_option("--dt", dt, "Sampling time in seconds");
  simulate->add_option("--csv", csv_path, "CSV output path")->required();
  simulate->add_option("--svg", svg_path, "Top-view SVG output path");
  simulate->callback([&] { rc = run_simulate(scene_path, duration, dt, csv_path, svg_path); });

  auto* fkm = app.add_subcommand("fkm", "Forward kinematics of a model file");
  std::string model, q_text;
  fkm->add_option("--model", model, "Model file")->required();
  fkm->add_option("--q", q_text, "Comma-separated configuration")->required();
  fkm->callback([&] { rc = run_fkm(model, parse_list(q_text)); });

  auto* regress = app.add_subcommand("regress-listing3", "LWR4 pose regulation convergence check");
  regress->callback([&] { rc = run_regression(); });

  auto* bench = app.add_subcommand("bench-mul", "Time dual quaternion multiplication");
  long long iterations = 1000000;
  bench->add_option("--iterations", iterations, "Number of products")
      ->check(CLI::PositiveNumber);
  bench->callback([&] { rc = run_bench(iterations); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dqkit: %s\n", e.what());
    return kExitFailure;
  }
  return rc;
}
