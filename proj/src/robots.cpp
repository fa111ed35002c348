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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dqkit/errors.hpp"

#ifndef DQKIT_DEFAULT_MODEL_DIR
#define DQKIT_DEFAULT_MODEL_DIR "models"
#endif

namespace dqkit {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ModelFileError(where + ": " + what);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(where, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

DualQuaternion unit_dq_field(const json& node, const char* field, const std::string& where) {
  const std::string w = where + "." + field;
  const auto c = number_array(node.at(field), w);
  if (c.size() != 8) fail(w, "expected 8 coefficients, got " + std::to_string(c.size()));
  const DualQuaternion x{c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]};
  if (!is_unit(x)) fail(w, "not a unit dual quaternion");
  return x;
}

double positive_field(const json& node, const char* field, const std::string& where) {
  const std::string w = where + "." + field;
  if (!node.contains(field) || !node.at(field).is_number()) fail(w, "missing number");
  const double v = node.at(field).get<double>();
  if (!(v > 0.0)) fail(w, "must be positive");
  return v;
}

json dq_to_json(const DualQuaternion& x) {
  return json(std::vector<double>(x.coefficients().begin(), x.coefficients().end()));
}

std::shared_ptr<Kinematics> parse_node(const json& node, const fs::path& base_dir,
                                       const std::string& where);

std::shared_ptr<Kinematics> parse_serial(const json& node, const std::string& where) {
  if (!node.contains("dh") || !node.at("dh").is_object()) fail(where + ".dh", "missing DH table");
  const json& dh_node = node.at("dh");
  DHParameters dh;
  for (const char* row : {"theta", "d", "a", "alpha"}) {
    const std::string w = where + ".dh." + row;
    if (!dh_node.contains(row)) fail(w, "missing row");
    auto values = number_array(dh_node.at(row), w);
    if (std::string(row) == "theta") dh.theta = std::move(values);
    if (std::string(row) == "d") dh.d = std::move(values);
    if (std::string(row) == "a") dh.a = std::move(values);
    if (std::string(row) == "alpha") dh.alpha = std::move(values);
  }
  try {
    dh.validate();
  } catch (const DomainError& e) {
    fail(where + ".dh", e.what());
  }
  auto arm = std::make_shared<SerialManipulator>(std::move(dh));
  if (node.contains("effector")) arm->set_effector(unit_dq_field(node, "effector", where));
  return arm;
}

std::shared_ptr<Kinematics> parse_base(const json& node, bool differential,
                                       const std::string& where) {
  auto base = std::make_shared<MobileBase>(
      differential ? MobileBase::differential(positive_field(node, "wheel_radius", where),
                                              positive_field(node, "axis_length", where))
                   : MobileBase::holonomic());
  if (node.contains("frame_displacement")) {
    base->set_frame_displacement(unit_dq_field(node, "frame_displacement", where));
  }
  if (node.contains("base_diameter")) {
    base->set_base_diameter(positive_field(node, "base_diameter", where));
  }
  return base;
}

std::shared_ptr<Kinematics> parse_wholebody(const json& node, const fs::path& base_dir,
                                            const std::string& where) {
  if (!node.contains("children") || !node.at("children").is_array() ||
      node.at("children").empty()) {
    fail(where + ".children", "whole-body model needs at least one child");
  }
  std::shared_ptr<WholeBody> body;
  int index = 0;
  for (const auto& child : node.at("children")) {
    const std::string w = where + ".children[" + std::to_string(index++) + "]";
    if (!child.is_object()) fail(w, "expected an object");
    std::shared_ptr<Kinematics> chain;
    if (child.contains("file")) {
      const fs::path file = base_dir / child.at("file").get<std::string>();
      chain = load_robot(file);
    } else {
      chain = parse_node(child, base_dir, w);
    }
    const bool reversed = child.value("reversed", false);
    if (!body) {
      if (reversed) fail(w, "the first chain cannot be reversed");
      body = std::make_shared<WholeBody>(chain);
    } else if (reversed) {
      body->add_reversed(chain);
    } else {
      body->add(chain);
    }
  }
  return body;
}

std::shared_ptr<Kinematics> parse_node(const json& node, const fs::path& base_dir,
                                       const std::string& where) {
  if (!node.is_object()) fail(where, "expected an object");
  if (!node.contains("kind") || !node.at("kind").is_string()) fail(where + ".kind", "missing");
  const std::string kind = node.at("kind").get<std::string>();
  std::shared_ptr<Kinematics> robot;
  try {
    if (kind == "serial") {
      robot = parse_serial(node, where);
    } else if (kind == "holonomic_base") {
      robot = parse_base(node, false, where);
    } else if (kind == "differential_base") {
      robot = parse_base(node, true, where);
    } else if (kind == "wholebody") {
      robot = parse_wholebody(node, base_dir, where);
    } else {
      fail(where + ".kind", "unknown kind '" + kind + "'");
    }
    if (node.contains("base_frame")) robot->set_base_frame(unit_dq_field(node, "base_frame", where));
    if (node.contains("reference_frame")) {
      robot->set_reference_frame(unit_dq_field(node, "reference_frame", where));
    }
  } catch (const json::exception& e) {
    fail(where, e.what());
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  robot->set_name(node.value("name", ""));
  return robot;
}

json to_json(const Kinematics& robot) {
  json node;
  if (!robot.name().empty()) node["name"] = robot.name();
  if (const auto* arm = dynamic_cast<const SerialManipulator*>(&robot)) {
    node["kind"] = "serial";
    node["dh"] = {{"theta", arm->dh().theta},
                  {"d", arm->dh().d},
                  {"a", arm->dh().a},
                  {"alpha", arm->dh().alpha}};
    node["effector"] = dq_to_json(arm->effector());
  } else if (const auto* base = dynamic_cast<const MobileBase*>(&robot)) {
    if (base->kind() == MobileBaseKind::kDifferential) {
      node["kind"] = "differential_base";
      node["wheel_radius"] = base->wheel_radius();
      node["axis_length"] = base->axis_length();
    } else {
      node["kind"] = "holonomic_base";
    }
    node["frame_displacement"] = dq_to_json(base->frame_displacement());
    if (base->base_diameter() > 0.0) node["base_diameter"] = base->base_diameter();
  } else if (const auto* body = dynamic_cast<const WholeBody*>(&robot)) {
    node["kind"] = "wholebody";
    json children = json::array();
    for (int i = 0; i < body->chain_count(); ++i) {
      json child = to_json(body->chain(i));
      child["reversed"] = body->is_reversed(i);
      children.push_back(std::move(child));
    }
    node["children"] = std::move(children);
  } else {
    throw ModelFileError("cannot serialize an unknown kinematics type");
  }
  node["base_frame"] = dq_to_json(robot.base_frame());
  node["reference_frame"] = dq_to_json(robot.reference_frame());
  return node;
}

}  // namespace

fs::path model_directory() {
  if (const char* env = std::getenv("DQKIT_MODEL_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return DQKIT_DEFAULT_MODEL_DIR;
}

std::shared_ptr<Kinematics> parse_robot(const std::string& json_text, const fs::path& base_dir) {
  json node;
  try {
    node = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelFileError(std::string("malformed model: ") + e.what());
  }
  return parse_node(node, base_dir, "model");
}

std::shared_ptr<Kinematics> load_robot(const fs::path& path) {
  const std::string text = read_file(path);
  json node;
  try {
    node = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFileError(path.string() + ": " + e.what());
  }
  return parse_node(node, path.parent_path(), path.string());
}

std::string serialize_robot(const Kinematics& robot) { return to_json(robot).dump(2); }

void save_robot(const Kinematics& robot, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot write " + path.string());
  out << serialize_robot(robot) << '\n';
  if (!out) throw IOError("failed writing " + path.string());
}

namespace {

template <typename T>
std::shared_ptr<T> load_catalog(const char* file) {
  auto robot = std::dynamic_pointer_cast<T>(load_robot(model_directory() / file));
  if (!robot) throw ModelFileError(std::string(file) + ": unexpected model kind");
  return robot;
}

}  // namespace

std::shared_ptr<SerialManipulator> lwr4_kinematics() {
  return load_catalog<SerialManipulator>("kuka_lwr4.json");
}

std::shared_ptr<WholeBody> youbot_kinematics() {
  return load_catalog<WholeBody>("kuka_youbot.json");
}

std::shared_ptr<MobileBase> differential_drive_kinematics() {
  return load_catalog<MobileBase>("differential_drive.json");
}

}  // namespace dqkit
