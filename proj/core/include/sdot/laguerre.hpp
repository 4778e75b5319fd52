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

#include <array>
#include <memory>
#include <vector>

#include "sdot/density.hpp"
#include "sdot/potential.hpp"
#include "sdot/quantize.hpp"

namespace sdot {

struct GridSpec {
  Eigen::VectorXd lo, hi;
  std::array<int, 3> res = {0, 0, 0};
  std::size_t size() const {
    return static_cast<std::size_t>(res[0]) * res[1] * res[2];
  }
};

// Laguerre (power) cells of the target points for given dual weights.
// Geometry representation by dimension: intervals (1D), clipped labeled
// polygons (2D), a deterministic integration grid with per-node cell labels
// (3D).
struct LaguerreDiagram {
  int dim = 0;
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd weights;
  std::vector<double> masses;
  std::vector<std::pair<int, int>> adjacency;
  Domain source_domain = Domain::full_space(1);
  Eigen::VectorXd box_lo, box_hi;  // integration box actually used

  std::vector<std::array<double, 2>> cells1d;
  std::vector<LabeledPolygon> cells2d;
  GridSpec grid;
  std::vector<std::int32_t> labels;  // 3D only

  // Induced potential u(x) = max_i (x.y_i - w_i); slopes are exactly the
  // target points, so du(X) is contained in their convex hull.
  PiecewiseAffinePotential potential() const;

  double max_cell_diameter() const;
};

struct LaguerreConfig {
  int grid_res = 64;        // per-axis 3D resolution
  int ball_sides = 128;     // polygonalization of 2D ball domains
  double mass_rel_tol = 1e-11;
  int threads = 0;          // 0 = hardware concurrency
};

// Precomputes the source geometry (polygonalization / grid density weights)
// once, so repeated weight evaluations inside the solver are cheap.
class LaguerreBuilder {
 public:
  LaguerreBuilder(SourceDensity source, DiscreteMeasure target,
                  LaguerreConfig cfg = {});

  LaguerreDiagram build(const Eigen::VectorXd& weights) const;
  // Negated mass Jacobian, the PSD Hessian of the dual objective:
  // G(i,j) = -dmass_i/dw_j for i != j, diagonal = row-sum complement.
  Eigen::MatrixXd dual_hessian(const LaguerreDiagram& d) const;

  const SourceDensity& source() const { return source_; }
  const DiscreteMeasure& target() const { return target_; }

  // Smallest meaningful mass difference: the largest single grid-node weight
  // in 3D (masses move in such jumps as nodes change label), 0 otherwise.
  double mass_resolution() const;

  // Convex dual objective int_X max_i(x.y_i - w_i) F dx + sum_i w_i m_i,
  // whose gradient is m - mass; the solver's line-search merit function.
  double dual_value(const LaguerreDiagram& d) const;

 private:
  SourceDensity source_;
  DiscreteMeasure target_;
  LaguerreConfig cfg_;
  LabeledPolygon domain_poly_;          // 2D
  GridSpec grid_;                       // 3D
  std::vector<double> grid_density_;    // 3D, normalized node masses
  std::vector<Eigen::VectorXd> grid_pts_;
  double x_lo_ = 0.0, x_hi_ = 0.0;      // 1D
};

LaguerreDiagram laguerre_diagram(const SourceDensity& source,
                                 const DiscreteMeasure& target,
                                 const Eigen::VectorXd& weights,
                                 const LaguerreConfig& cfg = {});

}  // namespace sdot
