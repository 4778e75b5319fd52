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

#include "sdot/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sdot {

double polygon_area(const std::vector<Eigen::Vector2d>& v) {
  double a = 0.0;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(a);
}

Eigen::Vector2d polygon_centroid(const std::vector<Eigen::Vector2d>& v) {
  double a = 0.0;
  Eigen::Vector2d c(0, 0);
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    double w = p.x() * q.y() - q.x() * p.y();
    a += w;
    c += w * (p + q);
  }
  if (std::abs(a) < 1e-30) {
    c.setZero();
    for (const auto& p : v) c += p;
    return v.empty() ? c : Eigen::Vector2d(c / double(v.size()));
  }
  return c / (3.0 * a);
}

double polygon_diameter(const std::vector<Eigen::Vector2d>& v) {
  double d = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      d = std::max(d, (v[i] - v[j]).norm());
  return d;
}

bool point_in_convex_polygon(const std::vector<Eigen::Vector2d>& poly,
                             const Eigen::Vector2d& p, double tol) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    double cross = (b.x() - a.x()) * (p.y() - a.y()) -
                   (b.y() - a.y()) * (p.x() - a.x());
    if (cross < -tol) return false;  // CCW orientation assumed
  }
  return true;
}

LabeledPolygon clip_polygon(const LabeledPolygon& poly,
                            const Eigen::Vector2d& n, double o, int new_label) {
  LabeledPolygon out;
  const size_t m = poly.v.size();
  if (m == 0) return out;
  for (size_t i = 0; i < m; ++i) {
    const auto& cur = poly.v[i];
    const auto& nxt = poly.v[(i + 1) % m];
    double dc = n.dot(cur) - o;
    double dn = n.dot(nxt) - o;
    bool cin = dc <= 0.0;
    bool nin = dn <= 0.0;
    if (cin) {
      out.v.push_back(cur);
      if (nin) {
        out.label.push_back(poly.label[i]);
      } else {
        double t = dc / (dc - dn);
        out.v.push_back(cur + t * (nxt - cur));
        out.label.push_back(poly.label[i]);
        out.label.push_back(new_label);
      }
    } else if (nin) {
      double t = dc / (dc - dn);
      out.v.push_back(cur + t * (nxt - cur));
      out.label.push_back(poly.label[i]);
    }
  }
  // The label following an exit-intersection vertex belongs to the cut; fix
  // up the cyclic off-by-one introduced above: labels were pushed per emitted
  // edge already, so sizes must agree.
  if (out.label.size() != out.v.size()) out.label.resize(out.v.size(), new_label);
  if (polygon_area(out.v) < 1e-300) return LabeledPolygon{};
  return out;
}

std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> pts) {
  auto cmp = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  };
  std::sort(pts.begin(), pts.end(), cmp);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return (a - b).norm() < 1e-12;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-14) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-14) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

LabeledPolygon make_box_polygon(const Eigen::Vector2d& lo,
                                const Eigen::Vector2d& hi) {
  LabeledPolygon p;
  p.v = {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
  p.label = {-1, -1, -1, -1};
  return p;
}

LabeledPolygon make_regular_polygon(const Eigen::Vector2d& center, double r,
                                    int sides) {
  LabeledPolygon p;
  for (int i = 0; i < sides; ++i) {
    double a = 2.0 * M_PI * i / sides;
    p.v.emplace_back(center.x() + r * std::cos(a), center.y() + r * std::sin(a));
    p.label.push_back(-1);
  }
  return p;
}

}  // namespace sdot
