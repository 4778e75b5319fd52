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
#include <optional>
#include <vector>

namespace sdot {

// Radially degenerate convex potential u(x', x_n) = |x'|^gamma (1-x_n^2)^-alpha
// on X = R^{n-1} x (-1,1), with gamma = 2 - 2/n.  Convex but neither strictly
// convex nor C^2: it vanishes on the segment {0} x [-1,1], while its Hessian
// determinant stays positive off the axis.
struct CounterexampleSpec {
  int n;
  double alpha;
  double gamma;

  // Enforces n >= 3 and 0 < alpha < gamma - 1.
  CounterexampleSpec(int n, double alpha);
  // Skips the alpha upper bound; used to demonstrate the convexity scan
  // catching inadmissible parameters.
  static CounterexampleSpec unchecked(int n, double alpha);

  static double admissible_alpha_midpoint(int n);  // (gamma-1)/2

 private:
  CounterexampleSpec() = default;
};

struct CeEval {
  double value;
  Eigen::VectorXd gradient;
  double hessian_det;  // independent of x' (the gamma choice cancels |x'|)
};

// Throws std::domain_error when |x_n| >= 1.
CeEval ce_evaluate(const CounterexampleSpec& spec, const Eigen::VectorXd& x);

struct ConvexityCertificate {
  bool positive_det;
  double min_inequality_margin;  // min over t of (g-1)(1+t^2) - 2 a t^2
  double min_eigenvalue_scan;    // min FD-Hessian eigenvalue over the sample grid
};

ConvexityCertificate ce_convexity_certificate(const CounterexampleSpec& spec,
                                              int grid_resolution = 512);

// Inverts the gradient map.  nullopt encodes NoPreimage (the image misses
// {0} x (R \ {0})); throws std::runtime_error on root-bracket failure.
std::optional<Eigen::VectorXd> ce_invert_gradient(const CounterexampleSpec& spec,
                                                  const Eigen::VectorXd& y);

// F(x) = det D2u(x) * (2 pi)^{-n/2} exp(-|grad u(x)|^2 / 2).
double ce_induced_density(const CounterexampleSpec& spec,
                          const Eigen::VectorXd& x);
// log F, finite even where the Gaussian factor underflows doubles.
double ce_induced_density_log(const CounterexampleSpec& spec,
                              const Eigen::VectorXd& x);

struct DegeneracyRow {
  int k;
  Eigen::VectorXd x;
  double F;
  double log_F;
  double gradient_norm;
};

// Evaluates F along an approach sequence toward the domain boundary (away
// from the two exceptional poles).  Throws if a point leaves X or B_R.
std::vector<DegeneracyRow> ce_degeneracy_scan(
    const CounterexampleSpec& spec, double radius,
    const std::vector<Eigen::VectorXd>& approach_points);

}  // namespace sdot
