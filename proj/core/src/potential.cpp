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

#include "sdot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdot/geometry.hpp"
#include "sdot/linprog.hpp"

namespace sdot {

namespace {

std::vector<Eigen::VectorXd> extreme_point_filter(
    std::vector<Eigen::VectorXd> pts) {
  // Keeps points not expressible as convex combinations of the others.
  if (pts.size() <= 2) return pts;
  const int dim = static_cast<int>(pts[0].size());
  std::vector<Eigen::VectorXd> out;
  for (size_t j = 0; j < pts.size(); ++j) {
    const size_t n = pts.size() - 1;
    Eigen::MatrixXd A(dim + 1, n);
    Eigen::VectorXd b(dim + 1);
    size_t col = 0;
    for (size_t k = 0; k < pts.size(); ++k) {
      if (k == j) continue;
      A.col(col).head(dim) = pts[k];
      A(dim, col) = 1.0;
      ++col;
    }
    b.head(dim) = pts[j];
    b[dim] = 1.0;
    auto lp = solve_lp(A, b, Eigen::VectorXd::Zero(n));
    if (lp.status != LpResult::Status::kOptimal) out.push_back(pts[j]);
  }
  return out;
}

std::vector<Eigen::VectorXd> hull_vertices(std::vector<Eigen::VectorXd> pts,
                                           int dim) {
  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    std::vector<Eigen::VectorXd> out;
    out.push_back(Eigen::VectorXd::Constant(1, lo));
    if (hi > lo) out.push_back(Eigen::VectorXd::Constant(1, hi));
    return out;
  }
  if (dim == 2) {
    std::vector<Eigen::Vector2d> p2;
    p2.reserve(pts.size());
    for (const auto& p : pts) p2.emplace_back(p[0], p[1]);
    auto h = convex_hull_2d(std::move(p2));
    std::vector<Eigen::VectorXd> out;
    for (const auto& p : h) {
      Eigen::VectorXd v(2);
      v << p.x(), p.y();
      out.push_back(v);
    }
    return out;
  }
  return extreme_point_filter(std::move(pts));
}

}  // namespace

bool SubdifferentialSet::singleton(double tol) const {
  for (size_t i = 1; i < vertices.size(); ++i)
    if ((vertices[i] - vertices[0]).norm() > tol) return false;
  return !vertices.empty();
}

double SubdifferentialSet::measure() const {
  if (vertices.empty()) return 0.0;
  if (dim == 1) {
    double lo = vertices[0][0], hi = vertices[0][0];
    for (const auto& v : vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (dim == 2) {
    std::vector<Eigen::Vector2d> p2;
    for (const auto& v : vertices) p2.emplace_back(v[0], v[1]);
    auto h = convex_hull_2d(std::move(p2));
    if (h.size() < 3) return 0.0;
    return polygon_area(h);
  }
  throw std::runtime_error("SubdifferentialSet::measure: dim > 2 not supported");
}

PiecewiseAffinePotential::PiecewiseAffinePotential(int dim,
                                                   std::vector<AffinePiece> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw std::invalid_argument("PiecewiseAffinePotential: empty piece list");
  for (const auto& p : pieces_)
    if (p.slope.size() != dim_)
      throw std::invalid_argument("PiecewiseAffinePotential: dimension mismatch");
}

double PiecewiseAffinePotential::value(const Eigen::VectorXd& x) const {
  double best = -1e300;
  for (const auto& p : pieces_) best = std::max(best, p.slope.dot(x) + p.intercept);
  return best;
}

int PiecewiseAffinePotential::argmax_piece(const Eigen::VectorXd& x) const {
  double best = -1e300;
  int arg = 0;
  for (size_t j = 0; j < pieces_.size(); ++j) {
    double v = pieces_[j].slope.dot(x) + pieces_[j].intercept;
    if (v > best) {
      best = v;
      arg = static_cast<int>(j);
    }
  }
  return arg;
}

std::vector<int> PiecewiseAffinePotential::active_pieces(const Eigen::VectorXd& x,
                                                         double tie_tol) const {
  double best = value(x);
  double tol = tie_tol * std::max(1.0, std::abs(best));
  std::vector<int> act;
  for (size_t j = 0; j < pieces_.size(); ++j) {
    double v = pieces_[j].slope.dot(x) + pieces_[j].intercept;
    if (v >= best - tol) act.push_back(static_cast<int>(j));
  }
  return act;
}

SubdifferentialSet PiecewiseAffinePotential::subdifferential(
    const Eigen::VectorXd& x, double tie_tol) const {
  auto act = active_pieces(x, tie_tol);
  std::vector<Eigen::VectorXd> slopes;
  slopes.reserve(act.size());
  for (int j : act) slopes.push_back(pieces_[static_cast<size_t>(j)].slope);
  return SubdifferentialSet{dim_, hull_vertices(std::move(slopes), dim_)};
}

double PiecewiseAffinePotential::lipschitz() const {
  double r = 0.0;
  for (const auto& p : pieces_) r = std::max(r, p.slope.norm());
  return r;
}

SubdifferentialSet PiecewiseAffinePotential::slope_hull() const {
  std::vector<Eigen::VectorXd> slopes;
  for (const auto& p : pieces_) slopes.push_back(p.slope);
  return SubdifferentialSet{dim_, hull_vertices(std::move(slopes), dim_)};
}

PiecewiseAffinePotential PiecewiseAffinePotential::canonical() const {
  std::vector<HullPoint> dual;
  dual.reserve(pieces_.size());
  for (const auto& p : pieces_) dual.push_back({p.slope, -p.intercept});
  std::vector<AffinePiece> keep;
  for (size_t j = 0; j < pieces_.size(); ++j) {
    auto env = lower_envelope_value(dual, dual[j].point, static_cast<int>(j));
    if (!env || dual[j].value <= *env + 1e-12 * std::max(1.0, std::abs(*env)))
      keep.push_back(pieces_[j]);
  }
  if (keep.empty()) keep.push_back(pieces_[0]);
  return PiecewiseAffinePotential(dim_, std::move(keep));
}

LowerHullPotential::LowerHullPotential(int dim, std::vector<HullPoint> points)
    : dim_(dim), points_(std::move(points)) {
  if (points_.empty())
    throw std::invalid_argument("LowerHullPotential: empty point list");
  for (const auto& p : points_)
    if (p.point.size() != dim_)
      throw std::invalid_argument("LowerHullPotential: dimension mismatch");
}

std::optional<double> LowerHullPotential::value(const Eigen::VectorXd& y) const {
  return lower_envelope_value(points_, y);
}

bool LowerHullPotential::in_domain(const Eigen::VectorXd& y) const {
  return value(y).has_value();
}

std::optional<double> lower_envelope_value(const std::vector<HullPoint>& pts,
                                           const Eigen::VectorXd& y, int exclude,
                                           Eigen::VectorXd* dual) {
  const int dim = static_cast<int>(y.size());
  std::vector<const HullPoint*> use;
  for (size_t k = 0; k < pts.size(); ++k)
    if (static_cast<int>(k) != exclude) use.push_back(&pts[k]);
  if (use.empty()) return std::nullopt;

  // min sum lambda_k v_k  s.t.  sum lambda_k p_k = y, sum lambda_k = 1.
  const int n = static_cast<int>(use.size());
  Eigen::MatrixXd A(dim + 1, n);
  Eigen::VectorXd b(dim + 1), c(n);
  for (int k = 0; k < n; ++k) {
    A.col(k).head(dim) = use[static_cast<size_t>(k)]->point;
    A(dim, k) = 1.0;
    c[k] = use[static_cast<size_t>(k)]->value;
  }
  b.head(dim) = y;
  b[dim] = 1.0;
  auto lp = solve_lp(A, b, c);
  if (lp.status != LpResult::Status::kOptimal) return std::nullopt;
  if (dual) *dual = lp.dual.head(dim);
  return lp.value;
}

PiecewiseAffinePotential build_max_form(
    const std::vector<SupportDatum>& supports) {
  if (supports.empty()) throw std::invalid_argument("build_max_form: empty list");
  const int dim = static_cast<int>(supports[0].base_point.size());
  std::vector<AffinePiece> pieces;
  pieces.reserve(supports.size());
  for (const auto& s : supports) {
    if (s.base_point.size() != dim || s.slope.size() != dim)
      throw std::invalid_argument("build_max_form: dimension mismatch");
    pieces.push_back({s.slope, s.value - s.slope.dot(s.base_point)});
  }
  return PiecewiseAffinePotential(dim, std::move(pieces));
}

std::pair<double, SubdifferentialSet> evaluate_with_subdifferential(
    const PiecewiseAffinePotential& u, const Eigen::VectorXd& x, double tie_tol) {
  return {u.value(x), u.subdifferential(x, tie_tol)};
}

LowerHullPotential legendre_conjugate(const PiecewiseAffinePotential& u) {
  // u*(y) is the lower convex envelope of the dual points (slope_j, -b_j);
  // points strictly above the envelope correspond to nowhere-active pieces
  // and are dropped so the round trip is exact.
  std::vector<HullPoint> dual;
  for (const auto& p : u.pieces()) dual.push_back({p.slope, -p.intercept});
  std::vector<HullPoint> keep;
  for (size_t j = 0; j < dual.size(); ++j) {
    auto env = lower_envelope_value(dual, dual[j].point, static_cast<int>(j));
    if (!env || dual[j].value <= *env + 1e-12 * std::max(1.0, std::abs(*env)))
      keep.push_back(dual[j]);
  }
  if (keep.empty()) keep.push_back(dual[0]);
  return LowerHullPotential(u.dim(), std::move(keep));
}

PiecewiseAffinePotential legendre_conjugate(const LowerHullPotential& h) {
  // (u*)*(x) = max_k { p_k.x - v_k } over the envelope's own support points.
  std::vector<AffinePiece> pieces;
  const auto& pts = h.points();
  for (size_t k = 0; k < pts.size(); ++k) {
    auto env = lower_envelope_value(pts, pts[k].point, static_cast<int>(k));
    if (env && pts[k].value > *env + 1e-12 * std::max(1.0, std::abs(*env)))
      continue;  // strictly interior to the epigraph, contributes nothing
    pieces.push_back({pts[k].point, -pts[k].value});
  }
  if (pieces.empty()) pieces.push_back({pts[0].point, -pts[0].value});
  return PiecewiseAffinePotential(h.dim(), std::move(pieces));
}

}  // namespace sdot
