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
#include <functional>
#include <string>
#include <vector>

#include "sdot/domain.hpp"
#include "sdot/geometry.hpp"

namespace sdot {

// Absolutely continuous probability density 1_X F dx.  Unbounded supports are
// handled through a covering integration box certified to miss at most
// `mass_deficit` of the F-mass.
struct SourceDensity {
  Domain domain;
  std::function<double(const Eigen::VectorXd&)> raw;
  double normalization = 1.0;
  Eigen::VectorXd box_lo, box_hi;
  double mass_deficit = 0.0;
  bool is_uniform = false;
  double uniform_value = 0.0;  // normalized density value when uniform
  std::string name;
  std::vector<double> params;

  double operator()(const Eigen::VectorXd& x) const {
    if (!domain.contains(x)) return 0.0;
    return normalization * raw(x);
  }
};

SourceDensity make_uniform_density(const Domain& domain);
SourceDensity make_gaussian_density(int dim, double sigma);
// The Appendix density F on X = R^{n-1} x (-1,1), truncated to
// |x'|_inf <= xprime_radius, |x_n| <= xn_cap for integration.
SourceDensity make_counterexample_density(int n, double alpha,
                                          double xprime_radius,
                                          double xn_cap = 0.995);
SourceDensity make_density_by_name(const std::string& name, int dim,
                                   const std::vector<double>& params);

// -- quadrature -------------------------------------------------------------

// Integral of f over a convex polygon (fan triangulation, degree-5 rule with
// adaptive subdivision).  Exact fast path for affine/constant integrands.
double integrate_polygon(const std::function<double(const Eigen::Vector2d&)>& f,
                         const std::vector<Eigen::Vector2d>& poly,
                         double rel_tol = 1e-11);
double integrate_polygon_uniform(double density_value,
                                 const std::vector<Eigen::Vector2d>& poly);
// First moment integral (for F-weighted centroids).
Eigen::Vector2d integrate_polygon_moment(
    const std::function<double(const Eigen::Vector2d&)>& f,
    const std::vector<Eigen::Vector2d>& poly, double rel_tol = 1e-11);

// Line integral of f along segment [a, b] (adaptive Gauss-Legendre).
double integrate_segment(const std::function<double(const Eigen::Vector2d&)>& f,
                         const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                         double rel_tol = 1e-11);

// 1D integral over [a, b], composite Gauss-Legendre.
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int panels = 16);
double integrate_interval_moment(const std::function<double(double)>& f, double a,
                                 double b, int panels = 16);

// Tensor-product Gauss-Legendre over an axis-aligned cell in R^d.
double integrate_cell(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      int nodes_per_dim = 8);
Eigen::VectorXd integrate_cell_moment(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int nodes_per_dim = 8);

}  // namespace sdot
