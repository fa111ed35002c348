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

#include <string>

#include "dqkit/errors.hpp"
#include "dqkit/kinematics.hpp"

namespace dqkit {

WholeBody::WholeBody(std::shared_ptr<const Kinematics> first) {
  add(std::move(first));
}

void WholeBody::add(std::shared_ptr<const Kinematics> chain) {
  if (!chain) throw DomainError("cannot add a null chain");
  chains_.push_back({std::move(chain), false});
}

void WholeBody::add_reversed(std::shared_ptr<const Kinematics> chain) {
  if (!chain) throw DomainError("cannot add a null chain");
  chains_.push_back({std::move(chain), true});
}

int WholeBody::dof() const {
  int n = 0;
  for (const auto& e : chains_) n += e.chain->dof();
  return n;
}

int WholeBody::chain_offset(int i) const {
  if (i < 0 || i >= chain_count()) throw DimensionError("chain index out of range");
  int offset = 0;
  for (int k = 0; k < i; ++k) offset += chains_[k].chain->dof();
  return offset;
}

VectorXd WholeBody::sequential(const VectorXd& q) const {
  check_configuration(q);
  VectorXd out = q;
  int offset = 0;
  for (const auto& e : chains_) {
    const int n = e.chain->dof();
    if (e.reversed) out.segment(offset, n) = q.segment(offset, n).reverse();
    offset += n;
  }
  return out;
}

std::vector<DualQuaternion> WholeBody::chain_poses(const VectorXd& q, int count) const {
  check_configuration(q);
  std::vector<DualQuaternion> poses;
  poses.reserve(count);
  int offset = 0;
  for (int k = 0; k < count; ++k) {
    const auto& e = chains_[k];
    const int n = e.chain->dof();
    const DualQuaternion x = e.chain->fkm(q.segment(offset, n));
    poses.push_back(e.reversed ? conj(x) : x);
    offset += n;
  }
  return poses;
}

DualQuaternion WholeBody::fkm(const VectorXd& q) const {
  return fkm(q, chain_count() - 1);
}

DualQuaternion WholeBody::fkm(const VectorXd& q, int ith_chain) const {
  if (ith_chain < 0 || ith_chain >= chain_count()) {
    throw DimensionError("chain index " + std::to_string(ith_chain) + " out of range");
  }
  DualQuaternion x = frame_prefix();
  for (const auto& p : chain_poses(q, ith_chain + 1)) x = x * p;
  return x;
}

MatrixXd WholeBody::pose_jacobian(const VectorXd& q) const {
  return pose_jacobian(q, chain_count() - 1);
}

MatrixXd WholeBody::pose_jacobian(const VectorXd& q, int ith_chain) const {
  if (ith_chain < 0 || ith_chain >= chain_count()) {
    throw DimensionError("chain index " + std::to_string(ith_chain) + " out of range");
  }
  const int count = ith_chain + 1;
  const auto poses = chain_poses(q, count);

  std::vector<DualQuaternion> suffix(count);
  suffix[count - 1] = 1.0;
  for (int k = count - 2; k >= 0; --k) suffix[k] = poses[k + 1] * suffix[k + 1];

  MatrixXd jac = MatrixXd::Zero(8, dof());
  DualQuaternion prefix = frame_prefix();
  int offset = 0;
  for (int k = 0; k < count; ++k) {
    const auto& e = chains_[k];
    const int n = e.chain->dof();
    MatrixXd jk = e.chain->pose_jacobian(q.segment(offset, n));
    if (e.reversed) jk = conj_matrix8() * jk;
    jac.middleCols(offset, n) = hamiplus8(prefix) * haminus8(suffix[k]) * jk;
    prefix = prefix * poses[k];
    offset += n;
  }
  return jac;
}

}  // namespace dqkit
