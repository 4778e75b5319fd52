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
#include <vector>

namespace sdot {

// Convex polygon with per-edge provenance labels.  Edge k runs from vertex k
// to vertex k+1 (cyclic); the label records which clipping halfplane created
// it (-1 for edges of the original domain polygon).
struct LabeledPolygon {
  std::vector<Eigen::Vector2d> v;
  std::vector<int> label;

  bool empty() const { return v.size() < 3; }
};

double polygon_area(const std::vector<Eigen::Vector2d>& v);
Eigen::Vector2d polygon_centroid(const std::vector<Eigen::Vector2d>& v);
double polygon_diameter(const std::vector<Eigen::Vector2d>& v);
bool point_in_convex_polygon(const std::vector<Eigen::Vector2d>& poly,
                             const Eigen::Vector2d& p, double tol = 1e-12);

// Clips against the halfplane {x : n.x <= o}; new edges get `new_label`.
LabeledPolygon clip_polygon(const LabeledPolygon& poly,
                            const Eigen::Vector2d& n, double o, int new_label);

// Counterclockwise convex hull, no three collinear output points.
std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> pts);

LabeledPolygon make_box_polygon(const Eigen::Vector2d& lo,
                                const Eigen::Vector2d& hi);
LabeledPolygon make_regular_polygon(const Eigen::Vector2d& center, double r,
                                    int sides);

}  // namespace sdot
