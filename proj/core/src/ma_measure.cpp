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

#include "sdot/ma_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdot/rng.hpp"

namespace sdot {

namespace {

constexpr double kVertexDedupTol = 1e-8;

void add_candidate(std::vector<Eigen::VectorXd>& cands, const Eigen::VectorXd& x) {
  for (const auto& c : cands)
    if ((c - x).norm() < kVertexDedupTol) return;
  cands.push_back(x);
}

}  // namespace

std::vector<ComplexVertex> enumerate_complex_vertices(
    const PiecewiseAffinePotential& u) {
  const int dim = u.dim();
  if (dim > 2)
    throw std::runtime_error("enumerate_complex_vertices: dim > 2 not supported");
  const auto& pieces = u.pieces();
  const int n = static_cast<int>(pieces.size());
  std::vector<Eigen::VectorXd> cands;

  if (dim == 1) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double ds = pieces[i].slope[0] - pieces[j].slope[0];
        if (std::abs(ds) < 1e-14) continue;
        Eigen::VectorXd x(1);
        x[0] = (pieces[j].intercept - pieces[i].intercept) / ds;
        add_candidate(cands, x);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          Eigen::Matrix2d A;
          A.row(0) = (pieces[i].slope - pieces[j].slope).transpose();
          A.row(1) = (pieces[i].slope - pieces[k].slope).transpose();
          if (std::abs(A.determinant()) < 1e-12) continue;
          Eigen::Vector2d b(pieces[j].intercept - pieces[i].intercept,
                            pieces[k].intercept - pieces[i].intercept);
          Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
          Eigen::VectorXd xv(2);
          xv << x[0], x[1];
          add_candidate(cands, xv);
        }
      }
    }
  }

  std::vector<ComplexVertex> out;
  for (const auto& x : cands) {
    auto act = u.active_pieces(x, 1e-7);
    if (static_cast<int>(act.size()) < dim + 1) continue;
    auto sub = u.subdifferential(x, 1e-7);
    double m = sub.measure();
    if (m <= 1e-14) continue;
    out.push_back({x, std::move(act), m});
  }
  return out;
}

double ma_measure(const PiecewiseAffinePotential& u, const Domain& region,
                  std::uint64_t seed, std::size_t mc_samples) {
  if (region.dim() != u.dim())
    throw std::invalid_argument("ma_measure: dimension mismatch");
  if (region.kind() == Domain::Kind::kFullSpace) {
    if (u.dim() <= 2) return u.slope_hull().measure();
  } else if (!region.bounded()) {
    throw std::invalid_argument("ma_measure: unbounded region other than full_space");
  }

  if (u.dim() <= 2) {
    double mass = 0.0;
    for (const auto& v : enumerate_complex_vertices(u))
      if (region.contains(v.x)) mass += v.subdiff_measure;
    return mass;
  }

  // Dimension >= 3: a.e. p in conv{slopes} is realized at a single complex
  // vertex x(p) = grad u*(p); p contributes iff x(p) lies in the region.
  std::vector<HullPoint> dual;
  for (const auto& p : u.pieces()) dual.push_back({p.slope, -p.intercept});
  Eigen::VectorXd lo = dual[0].point, hi = dual[0].point;
  for (const auto& d : dual) {
    lo = lo.cwiseMin(d.point);
    hi = hi.cwiseMax(d.point);
  }
  double box_vol = 1.0;
  for (int i = 0; i < u.dim(); ++i) box_vol *= std::max(hi[i] - lo[i], 0.0);
  if (box_vol == 0.0) return 0.0;

  Rng rng(seed);
  std::size_t hits = 0;
  const bool whole_space = region.kind() == Domain::Kind::kFullSpace;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    Eigen::VectorXd p = rng.uniform_in_box(lo, hi);
    Eigen::VectorXd xhat;
    auto env = lower_envelope_value(dual, p, -1, &xhat);
    if (!env) continue;  // outside conv{slopes}
    if (whole_space || region.contains(xhat)) ++hits;
  }
  return box_vol * static_cast<double>(hits) / static_cast<double>(mc_samples);
}

SectionReport section_min_principle_check(const PiecewiseAffinePotential& u,
                                          const Eigen::VectorXd& affine_slope,
                                          double affine_intercept) {
  const int dim = u.dim();
  if (affine_slope.size() != dim)
    throw std::invalid_argument("section_min_principle_check: dimension mismatch");

  // Bounded section <=> the affine slope lies strictly inside conv{slopes}.
  auto hull = u.slope_hull();
  if (dim == 1) {
    double lo = 1e300, hi = -1e300;
    for (const auto& p : u.pieces()) {
      lo = std::min(lo, p.slope[0]);
      hi = std::max(hi, p.slope[0]);
    }
    if (!(affine_slope[0] > lo + 1e-12 && affine_slope[0] < hi - 1e-12))
      throw std::invalid_argument("section is unbounded");
  } else if (dim == 2) {
    std::vector<Eigen::Vector2d> h2;
    for (const auto& v : hull.vertices) h2.emplace_back(v[0], v[1]);
    if (h2.size() < 3 ||
        !point_in_convex_polygon(h2, Eigen::Vector2d(affine_slope[0], affine_slope[1]),
                                 -1e-10))
      throw std::invalid_argument("section is unbounded");
  } else {
    std::vector<HullPoint> pts;
    for (const auto& p : u.pieces()) pts.push_back({p.slope, 0.0});
    if (!lower_envelope_value(pts, affine_slope))
      throw std::invalid_argument("section is unbounded");
  }

  // min over S_bar of (u - l) equals -(u*(a) + c); on dS the difference is 0.
  std::vector<HullPoint> dual;
  for (const auto& p : u.pieces()) dual.push_back({p.slope, -p.intercept});
  auto star = lower_envelope_value(dual, affine_slope);
  double depth = star ? (*star + affine_intercept) : 0.0;

  SectionReport rep;
  rep.section_nonempty = depth > 0.0;
  rep.interior_defect = std::max(0.0, depth);
  if (dim <= 2) {
    double mass = 0.0;
    for (const auto& v : enumerate_complex_vertices(u)) {
      double diff = u.value(v.x) - (affine_slope.dot(v.x) + affine_intercept);
      if (diff <= 1e-10 * std::max(1.0, std::abs(u.value(v.x)))) mass += v.subdiff_measure;
    }
    rep.ma_mass_of_section = mass;
  }
  return rep;
}

double monotonicity_check(
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& samples) {
  double worst = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    for (size_t j = i + 1; j < samples.size(); ++j) {
      double d = -(samples[i].second - samples[j].second)
                      .dot(samples[i].first - samples[j].first);
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace sdot
