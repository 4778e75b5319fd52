// Copyright 2026 the sdot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

namespace sdot {

// Dense two-phase primal simplex for the small equality-form programs used by
// the convex kernel (lower envelopes, hull membership).  Few rows, up to a few
// hundred columns; Bland's rule, so it terminates.
//
//   minimize c.x   subject to  A x = b,  x >= 0
struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  double value = 0.0;
  Eigen::VectorXd x;      // primal solution
  Eigen::VectorXd dual;   // multipliers on the equality rows
};

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace sdot
