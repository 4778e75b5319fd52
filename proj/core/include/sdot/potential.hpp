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

// Relative tolerance used to decide which affine pieces are active at a point.
inline constexpr double kTieTol = 1e-9;

struct AffinePiece {
  Eigen::VectorXd slope;
  double intercept;
};

// Compact convex subdifferential, stored by its vertices.  Exact ordered hulls
// in dimension <= 2; extreme-point-filtered vertex lists above that.
struct SubdifferentialSet {
  int dim;
  std::vector<Eigen::VectorXd> vertices;

  bool singleton(double tol = 1e-12) const;
  // Lebesgue measure of the convex hull: length in 1D, area in 2D.
  double measure() const;
};

// Convex function represented as the (finite, everywhere-attained) maximum of
// affine pieces: u(x) = max_j slope_j.x + intercept_j.
class PiecewiseAffinePotential {
 public:
  PiecewiseAffinePotential(int dim, std::vector<AffinePiece> pieces);

  int dim() const { return dim_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  double value(const Eigen::VectorXd& x) const;
  // Lowest index attaining the max (the documented tie rule).
  int argmax_piece(const Eigen::VectorXd& x) const;
  std::vector<int> active_pieces(const Eigen::VectorXd& x,
                                 double tie_tol = kTieTol) const;
  SubdifferentialSet subdifferential(const Eigen::VectorXd& x,
                                     double tie_tol = kTieTol) const;

  // max_j |slope_j|; the global Lipschitz constant.
  double lipschitz() const;

  // Vertices of conv{slope_j} (the full subdifferential image).
  SubdifferentialSet slope_hull() const;

  // Removes pieces that are active nowhere (their dual point lies strictly
  // above the lower envelope of the others), making conjugation an involution.
  PiecewiseAffinePotential canonical() const;

 private:
  int dim_;
  std::vector<AffinePiece> pieces_;
};

struct HullPoint {
  Eigen::VectorXd point;  // slope-space location
  double value;
};

// Convex function represented as the lower convex envelope of finitely many
// (point, value) pairs, +infinity outside conv{points}.  Houses u*.
class LowerHullPotential {
 public:
  LowerHullPotential(int dim, std::vector<HullPoint> points);

  int dim() const { return dim_; }
  const std::vector<HullPoint>& points() const { return points_; }

  // std::nullopt encodes +infinity (y outside the hull of the points).
  std::optional<double> value(const Eigen::VectorXd& y) const;

  bool in_domain(const Eigen::VectorXd& y) const;

 private:
  int dim_;
  std::vector<HullPoint> points_;
};

struct SupportDatum {
  Eigen::VectorXd base_point;
  double value;
  Eigen::VectorXd slope;
};

// u(z) = max_j { value_j + slope_j.(z - base_point_j) }.
PiecewiseAffinePotential build_max_form(const std::vector<SupportDatum>& supports);

std::pair<double, SubdifferentialSet> evaluate_with_subdifferential(
    const PiecewiseAffinePotential& u, const Eigen::VectorXd& x,
    double tie_tol = kTieTol);

LowerHullPotential legendre_conjugate(const PiecewiseAffinePotential& u);
PiecewiseAffinePotential legendre_conjugate(const LowerHullPotential& h);

// Lower-envelope value at y of the dual point cloud {(p_k, v_k)}, optionally
// excluding one index; +infinity outside the hull.  Shared by conjugation and
// canonicalization.
std::optional<double> lower_envelope_value(const std::vector<HullPoint>& pts,
                                           const Eigen::VectorXd& y,
                                           int exclude = -1,
                                           Eigen::VectorXd* dual = nullptr);

}  // namespace sdot
