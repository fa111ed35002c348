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

// Robot model files.
//
// A model is a JSON object:
//
//   {
//     "name": "...",
//     "kind": "serial" | "holonomic_base" | "differential_base" | "wholebody",
//     "dh": {"theta": [...], "d": [...], "a": [...], "alpha": [...]},  // serial
//     "base_frame": [8], "reference_frame": [8],                       // any kind
//     "effector": [8],                                                 // serial
//     "frame_displacement": [8], "base_diameter": m,                   // bases
//     "wheel_radius": m, "axis_length": m,                             // differential
//     "children": [ {<inline model>, "reversed": bool}                 // wholebody
//                 | {"file": "other.json", "reversed": bool} ]
//   }
//
// Dual quaternions are listed as eight scalar-first coefficients. Relative
// "file" references resolve against the directory of the including file.

#ifndef DQKIT_ROBOTS_HPP_
#define DQKIT_ROBOTS_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "dqkit/kinematics.hpp"

namespace dqkit {

// DQKIT_MODEL_DIR from the environment, else the directory configured at build
// time.
std::filesystem::path model_directory();

// Throws ModelFileError (with the offending file and field) or IOError.
std::shared_ptr<Kinematics> load_robot(const std::filesystem::path& path);
std::shared_ptr<Kinematics> parse_robot(const std::string& json_text,
                                        const std::filesystem::path& base_dir = {});
std::string serialize_robot(const Kinematics& robot);
void save_robot(const Kinematics& robot, const std::filesystem::path& path);

// Catalog models shipped in the model directory.
std::shared_ptr<SerialManipulator> lwr4_kinematics();
std::shared_ptr<WholeBody> youbot_kinematics();
std::shared_ptr<MobileBase> differential_drive_kinematics();

}  // namespace dqkit

#endif  // DQKIT_ROBOTS_HPP_
