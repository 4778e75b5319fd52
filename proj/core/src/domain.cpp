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

#include "sdot/domain.hpp"

#include <cmath>

namespace sdot {

Domain Domain::full_space(int dim) { return Domain(Kind::kFullSpace, dim); }

Domain Domain::halfspace(const Eigen::VectorXd& normal, double offset) {
  Domain d(Kind::kHalfspace, static_cast<int>(normal.size()));
  d.normal_ = normal;
  d.offset_ = offset;
  return d;
}

Domain Domain::ball(const Eigen::VectorXd& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ball: radius must be positive");
  Domain d(Kind::kBall, static_cast<int>(center.size()));
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size() || ((hi - lo).array() <= 0.0).any())
    throw std::invalid_argument("box: need lo < hi componentwise");
  Domain d(Kind::kBox, static_cast<int>(lo.size()));
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Domain Domain::polygon(std::vector<Eigen::Vector2d> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
  Domain d(Kind::kPolygon, 2);
  d.poly_ = std::move(vertices);
  return d;
}

Domain Domain::graph_domain(int dim, double c, double lambda, double radius) {
  if (c <= 0.0 || lambda <= 1.0 || radius <= 0.0)
    throw std::invalid_argument("graph_domain: need c > 0, lambda > 1, radius > 0");
  Domain d(Kind::kGraphDomain, dim);
  d.c_ = c;
  d.lambda_ = lambda;
  d.radius_ = radius;
  d.center_ = Eigen::VectorXd::Zero(dim);
  return d;
}

bool Domain::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != dim_) throw std::invalid_argument("domain: dimension mismatch");
  switch (kind_) {
    case Kind::kFullSpace:
      return true;
    case Kind::kHalfspace:
      return normal_.dot(x) <= offset_ + tol;
    case Kind::kBall:
      return (x - center_).norm() <= radius_ + tol;
    case Kind::kBox:
      return ((x - lo_).array() >= -tol).all() && ((hi_ - x).array() >= -tol).all();
    case Kind::kPolygon:
      return point_in_convex_polygon(poly_, Eigen::Vector2d(x[0], x[1]),
                                     tol + 1e-12);
    case Kind::kGraphDomain: {
      double rp = x.tail(dim_ - 1).norm();
      return x[0] <= -c_ * std::pow(rp, lambda_) + tol && x.norm() <= radius_ + tol;
    }
  }
  return false;
}

bool Domain::bounded() const {
  switch (kind_) {
    case Kind::kFullSpace:
    case Kind::kHalfspace:
      return false;
    default:
      return true;
  }
}

bool Domain::convex() const {
  // graph_domain is convex because lambda > 1 makes c|x'|^lambda convex.
  return true;
}

double Domain::volume() const {
  switch (kind_) {
    case Kind::kBall: {
      double v = std::pow(M_PI, dim_ / 2.0) / std::tgamma(dim_ / 2.0 + 1.0);
      return v * std::pow(radius_, dim_);
    }
    case Kind::kBox:
      return (hi_ - lo_).prod();
    case Kind::kPolygon:
      return polygon_area(poly_);
    case Kind::kGraphDomain: {
      // Monte-Carlo-free quadrature in the radial variable over the bounding
      // box is feasible, but nothing in the library needs it; keep the exact
      // oracle for the bounded primitive variants only.
      throw std::runtime_error("graph_domain: no closed-form volume");
    }
    default:
      throw std::runtime_error("volume: unbounded domain");
  }
}

void Domain::bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const {
  switch (kind_) {
    case Kind::kBall:
      lo = center_.array() - radius_;
      hi = center_.array() + radius_;
      return;
    case Kind::kBox:
      lo = lo_;
      hi = hi_;
      return;
    case Kind::kPolygon: {
      lo = Eigen::VectorXd::Constant(2, 1e300);
      hi = Eigen::VectorXd::Constant(2, -1e300);
      for (const auto& p : poly_) {
        lo[0] = std::min(lo[0], p.x());
        lo[1] = std::min(lo[1], p.y());
        hi[0] = std::max(hi[0], p.x());
        hi[1] = std::max(hi[1], p.y());
      }
      return;
    }
    case Kind::kGraphDomain:
      lo = Eigen::VectorXd::Constant(dim_, -radius_);
      hi = Eigen::VectorXd::Constant(dim_, radius_);
      hi[0] = 0.0;
      return;
    default:
      throw std::runtime_error("bounding_box: unbounded domain");
  }
}

}  // namespace sdot
