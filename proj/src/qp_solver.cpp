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

#include "dqkit/qp_solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dqkit/errors.hpp"

namespace dqkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibilityTolerance = 1e-11;
constexpr double kDependenceTolerance = 1e-12;

// Constraints in the form s_i(u) = n_i'u - c_i >= 0 (or == 0 for equalities).
struct ConstraintSet {
  MatrixXd normals;  // one column per constraint
  VectorXd offsets;
  std::vector<bool> equality;

  double slack(int i, const VectorXd& u) const {
    return normals.col(i).dot(u) - offsets(i);
  }
};

class DualActiveSet {
 public:
  DualActiveSet(const MatrixXd& hessian, const ConstraintSet& constraints)
      : llt_(hessian), constraints_(constraints) {}

  bool hessian_is_positive_definite(const MatrixXd& hessian) const {
    if (llt_.info() != Eigen::Success) return false;
    // LLT on a semidefinite matrix can succeed with a vanishing pivot.
    const VectorXd diag = MatrixXd(llt_.matrixL()).diagonal();
    return diag.minCoeff() > 1e-12 * std::sqrt(hessian.diagonal().cwiseAbs().maxCoeff());
  }

  VectorXd solve_hessian(const VectorXd& v) const { return llt_.solve(v); }

  // Primal direction z and dual direction r for adding constraint p to the
  // current active set: z = H^-1 (I - N N*) n_p, r = N* n_p.
  void directions(int p, VectorXd& z, VectorXd& r) const {
    const VectorXd np = constraints_.normals.col(p);
    const VectorXd hinv_np = llt_.solve(np);
    const int q = static_cast<int>(active_.size());
    if (q == 0) {
      z = hinv_np;
      r.resize(0);
      return;
    }
    MatrixXd n_active(np.size(), q);
    for (int j = 0; j < q; ++j) n_active.col(j) = constraints_.normals.col(active_[j]);
    const MatrixXd hinv_n = llt_.solve(n_active);
    const MatrixXd m = n_active.transpose() * hinv_n;
    r = m.ldlt().solve(n_active.transpose() * hinv_np);
    z = hinv_np - hinv_n * r;
  }

  std::vector<int>& active() { return active_; }
  std::vector<double>& multipliers() { return multipliers_; }

  void drop(int position) {
    active_.erase(active_.begin() + position);
    multipliers_.erase(multipliers_.begin() + position);
  }

 private:
  Eigen::LLT<MatrixXd> llt_;
  const ConstraintSet& constraints_;
  std::vector<int> active_;
  std::vector<double> multipliers_;
};

}  // namespace

void QPProblem::validate() const {
  const auto n = h.size();
  if (n == 0) throw DimensionError("QP has no variables");
  if (H.rows() != n || H.cols() != n) throw DimensionError("QP Hessian must be n x n");
  if (A.rows() != a.size() || (A.rows() > 0 && A.cols() != n)) {
    throw DimensionError("QP inequality block has inconsistent sizes");
  }
  if (B.rows() != b.size() || (B.rows() > 0 && B.cols() != n)) {
    throw DimensionError("QP equality block has inconsistent sizes");
  }
}

QPSolution solve_qp(const QPProblem& problem) {
  problem.validate();
  const int n = problem.variables();
  const int m = static_cast<int>(problem.A.rows());
  const int p = static_cast<int>(problem.B.rows());

  if ((problem.H - problem.H.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * (1.0 + problem.H.cwiseAbs().maxCoeff())) {
    throw DomainError("QP Hessian is not symmetric");
  }

  // Equalities first, then inequalities (A u <= a  <=>  -A u + a >= 0).
  ConstraintSet cs;
  cs.normals.resize(n, p + m);
  cs.offsets.resize(p + m);
  for (int i = 0; i < p; ++i) {
    cs.normals.col(i) = problem.B.row(i).transpose();
    cs.offsets(i) = problem.b(i);
    cs.equality.push_back(true);
  }
  for (int i = 0; i < m; ++i) {
    cs.normals.col(p + i) = -problem.A.row(i).transpose();
    cs.offsets(p + i) = -problem.a(i);
    cs.equality.push_back(false);
  }

  DualActiveSet solver(problem.H, cs);
  if (!solver.hessian_is_positive_definite(problem.H)) {
    throw DomainError("QP Hessian is not positive definite");
  }

  QPSolution result;
  VectorXd u = -solver.solve_hessian(problem.h);
  const int max_iterations = 10 * (n + m + p);
  int iterations = 0;
  VectorXd z, r;
  auto& active = solver.active();
  auto& mult = solver.multipliers();

  const auto scale_of = [&](int i) {
    return 1.0 + std::abs(cs.offsets(i)) + cs.normals.col(i).cwiseAbs().maxCoeff();
  };

  for (int i = 0; i < p; ++i) {
    const double s = cs.slack(i, u);
    solver.directions(i, z, r);
    const VectorXd ni = cs.normals.col(i);
    const double zn = z.dot(ni);
    if (zn <= kDependenceTolerance * ni.dot(solver.solve_hessian(ni))) {
      if (std::abs(s) <= kFeasibilityTolerance * scale_of(i)) continue;  // redundant row
      throw InfeasibleError("equality constraints are inconsistent (row " + std::to_string(i) + ")");
    }
    const double t = -s / zn;
    u += t * z;
    for (size_t j = 0; j < mult.size(); ++j) mult[j] -= t * r(static_cast<Eigen::Index>(j));
    active.push_back(i);
    mult.push_back(t);
  }

  std::vector<bool> is_active(p + m, false);
  for (int j : active) is_active[j] = true;

  while (true) {
    // Most violated inactive inequality.
    int chosen = -1;
    double worst = 0.0;
    for (int i = p; i < p + m; ++i) {
      if (is_active[i]) continue;
      const double s = cs.slack(i, u) / scale_of(i);
      if (s < -kFeasibilityTolerance && s < worst) {
        worst = s;
        chosen = i;
      }
    }
    if (chosen < 0) break;

    double u_new = 0.0;
    while (true) {
      if (++iterations > max_iterations) {
        throw MaxIterationsError("QP active-set iteration cap of " +
                                 std::to_string(max_iterations) + " reached");
      }
      solver.directions(chosen, z, r);
      const VectorXd nc = cs.normals.col(chosen);

      // Largest dual step keeping active inequality multipliers nonnegative.
      double t1 = kInf;
      int block = -1;
      const double r_eps = 1e-14 * (1.0 + (r.size() ? r.cwiseAbs().maxCoeff() : 0.0));
      for (size_t j = 0; j < active.size(); ++j) {
        if (cs.equality[active[j]]) continue;
        const double rj = r(static_cast<Eigen::Index>(j));
        if (rj > r_eps) {
          const double ratio = mult[j] / rj;
          if (ratio < t1) {
            t1 = ratio;
            block = static_cast<int>(j);
          }
        }
      }

      const double zn = z.dot(nc);
      const bool primal_step = zn > kDependenceTolerance * nc.dot(solver.solve_hessian(nc));
      const double t2 = primal_step ? -cs.slack(chosen, u) / zn : kInf;
      const double t = std::min(t1, t2);
      if (t == kInf) {
        throw InfeasibleError("inequality constraints are infeasible (row " +
                              std::to_string(chosen - p) + ")");
      }

      if (primal_step) u += t * z;
      for (size_t j = 0; j < mult.size(); ++j) mult[j] -= t * r(static_cast<Eigen::Index>(j));
      u_new += t;

      if (primal_step && t2 <= t1) {
        active.push_back(chosen);
        mult.push_back(u_new);
        is_active[chosen] = true;
        break;
      }
      is_active[active[block]] = false;
      solver.drop(block);
    }
  }

  result.u = u;
  result.iterations = iterations;
  result.inequality_multipliers = VectorXd::Zero(m);
  result.equality_multipliers = VectorXd::Zero(p);
  for (size_t j = 0; j < active.size(); ++j) {
    const int i = active[j];
    // Reported for H u + h + A'lambda + B'nu = 0.
    if (i < p) {
      result.equality_multipliers(i) = -mult[j];
    } else {
      result.inequality_multipliers(i - p) = mult[j];
    }
  }
  return result;
}

}  // namespace dqkit
