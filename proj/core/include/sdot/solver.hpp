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

#include "sdot/laguerre.hpp"

namespace sdot {

struct SolveResult {
  Eigen::VectorXd weights;  // normalized to w_0 = 0
  LaguerreDiagram diagram;
  int iterations = 0;
  double residual = 0.0;  // max_i |mass_i - m_i|
  bool converged = false;
};

// Damped Newton on the Kantorovich dual; the line search keeps every cell
// mass above a fraction of the smallest target mass so the Hessian stays
// usable, with diagonally regularized / gradient fallback steps when the
// Newton system is near-singular.  Throws on non-convergence.
SolveResult solve_weights(const SourceDensity& source,
                          const DiscreteMeasure& target, double tol,
                          int max_iter = 100, const LaguerreConfig& cfg = {});
SolveResult solve_weights(const LaguerreBuilder& builder, double tol,
                          int max_iter = 100);

// Cell index and target point for x in X (lowest index on ties).
std::pair<int, Eigen::VectorXd> transport_map(const LaguerreDiagram& diagram,
                                              const Eigen::VectorXd& x);

}  // namespace sdot
