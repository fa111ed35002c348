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

#ifndef DQKIT_QP_SOLVER_HPP_
#define DQKIT_QP_SOLVER_HPP_

#include "dqkit/dual_quaternion.hpp"

namespace dqkit {

// min (1/2) u'Hu + h'u  s.t.  A u <= a,  B u = b.
struct QPProblem {
  MatrixXd H;
  VectorXd h;
  MatrixXd A;  // m x n, may have zero rows
  VectorXd a;
  MatrixXd B;  // p x n, may have zero rows
  VectorXd b;

  int variables() const { return static_cast<int>(h.size()); }
  // Throws DimensionError on inconsistent sizes.
  void validate() const;
};

struct QPSolution {
  VectorXd u;
  VectorXd inequality_multipliers;  // one per row of A, zero when inactive
  VectorXd equality_multipliers;    // one per row of B
  int iterations = 0;
};

// Dense dual active-set solver for strictly convex QPs (Goldfarb-Idnani).
// Starts at the unconstrained minimizer and adds violated constraints one at
// a time, so no feasible starting point is needed. Throws DomainError if H is
// not positive definite, InfeasibleError when the constraints admit no
// solution, MaxIterationsError after 10 * (n + m + p) active-set changes.
QPSolution solve_qp(const QPProblem& problem);

}  // namespace dqkit

#endif  // DQKIT_QP_SOLVER_HPP_
