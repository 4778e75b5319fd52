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
#include <stdexcept>
#include <vector>

#include "sdot/geometry.hpp"

namespace sdot {

// Region descriptor used for sources, targets and probe regions.
// graph_domain is {x = (x1, x') : x1 <= -c|x'|^lambda} intersected with B_r;
// it contains the origin on its boundary and lies in {x1 <= 0}.
class Domain {
 public:
  enum class Kind { kFullSpace, kHalfspace, kBall, kBox, kPolygon, kGraphDomain };

  static Domain full_space(int dim);
  static Domain halfspace(const Eigen::VectorXd& normal, double offset);
  static Domain ball(const Eigen::VectorXd& center, double radius);
  static Domain box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static Domain polygon(std::vector<Eigen::Vector2d> vertices);  // n = 2, CCW
  static Domain graph_domain(int dim, double c, double lambda, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  bool bounded() const;
  bool convex() const;
  double volume() const;  // throws for unbounded variants

  // Axis-aligned bounding box for bounded variants.
  void bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;

  const Eigen::VectorXd& box_lo() const { return lo_; }
  const Eigen::VectorXd& box_hi() const { return hi_; }
  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  const Eigen::VectorXd& normal() const { return normal_; }
  double offset() const { return offset_; }
  const std::vector<Eigen::Vector2d>& polygon_vertices() const { return poly_; }
  double graph_c() const { return c_; }
  double graph_lambda() const { return lambda_; }

 private:
  Domain(Kind k, int dim) : kind_(k), dim_(dim) {}

  Kind kind_;
  int dim_;
  Eigen::VectorXd normal_, center_, lo_, hi_;
  double offset_ = 0.0, radius_ = 0.0, c_ = 0.0, lambda_ = 0.0;
  std::vector<Eigen::Vector2d> poly_;
};

}  // namespace sdot
