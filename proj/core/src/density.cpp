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

#include "sdot/density.hpp"

#include <cmath>
#include <stdexcept>

#include "sdot/counterexample.hpp"

namespace sdot {

namespace {

// 8-point Gauss-Legendre on [-1, 1].
const double kGlNode8[8] = {-0.9602898564975363, -0.7966664774136267,
                            -0.5255324099163290, -0.1834346424956498,
                            0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
const double kGlWeight8[8] = {0.1012285362903763, 0.2223810344533745,
                              0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};

// Degree-5 seven-point triangle rule (barycentric abscissae).
struct TriNode {
  double a, b, w;
};
const TriNode kTri7[7] = {
    {1.0 / 3.0, 1.0 / 3.0, 0.225},
    {0.059715871789770, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.125939180544827}};

double tri_rule(const std::function<double(const Eigen::Vector2d&)>& f,
                const Eigen::Vector2d& v0, const Eigen::Vector2d& v1,
                const Eigen::Vector2d& v2) {
  double area = 0.5 * std::abs((v1 - v0).x() * (v2 - v0).y() -
                               (v2 - v0).x() * (v1 - v0).y());
  double s = 0.0;
  for (const auto& n : kTri7) {
    Eigen::Vector2d p = n.a * v0 + n.b * v1 + (1.0 - n.a - n.b) * v2;
    s += n.w * f(p);
  }
  return s * area;
}

double tri_adaptive(const std::function<double(const Eigen::Vector2d&)>& f,
                    const Eigen::Vector2d& v0, const Eigen::Vector2d& v1,
                    const Eigen::Vector2d& v2, double coarse, double tol,
                    int depth) {
  Eigen::Vector2d m01 = 0.5 * (v0 + v1), m12 = 0.5 * (v1 + v2),
                  m02 = 0.5 * (v0 + v2);
  double s0 = tri_rule(f, v0, m01, m02);
  double s1 = tri_rule(f, m01, v1, m12);
  double s2 = tri_rule(f, m02, m12, v2);
  double s3 = tri_rule(f, m01, m12, m02);
  double fine = s0 + s1 + s2 + s3;
  if (depth >= 12 || std::abs(fine - coarse) <= tol) return fine;
  double t = tol / 4.0;
  return tri_adaptive(f, v0, m01, m02, s0, t, depth + 1) +
         tri_adaptive(f, m01, v1, m12, s1, t, depth + 1) +
         tri_adaptive(f, m02, m12, v2, s2, t, depth + 1) +
         tri_adaptive(f, m01, m12, m02, s3, t, depth + 1);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double integrate_polygon(const std::function<double(const Eigen::Vector2d&)>& f,
                         const std::vector<Eigen::Vector2d>& poly,
                         double rel_tol) {
  if (poly.size() < 3) return 0.0;
  Eigen::Vector2d c = polygon_centroid(poly);
  double total = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    double coarse = tri_rule(f, c, a, b);
    total += tri_adaptive(f, c, a, b, coarse,
                          rel_tol * std::max(1e-3, std::abs(coarse)), 0);
  }
  return total;
}

double integrate_polygon_uniform(double density_value,
                                 const std::vector<Eigen::Vector2d>& poly) {
  return density_value * polygon_area(poly);
}

Eigen::Vector2d integrate_polygon_moment(
    const std::function<double(const Eigen::Vector2d&)>& f,
    const std::vector<Eigen::Vector2d>& poly, double rel_tol) {
  Eigen::Vector2d m;
  for (int k = 0; k < 2; ++k)
    m[k] = integrate_polygon([&](const Eigen::Vector2d& p) { return p[k] * f(p); },
                             poly, rel_tol);
  return m;
}

double integrate_segment(const std::function<double(const Eigen::Vector2d&)>& f,
                         const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                         double rel_tol) {
  double len = (b - a).norm();
  if (len == 0.0) return 0.0;
  auto panels_value = [&](int panels) {
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
      double t0 = static_cast<double>(p) / panels;
      double t1 = static_cast<double>(p + 1) / panels;
      for (int i = 0; i < 8; ++i) {
        double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kGlNode8[i];
        s += 0.5 * (t1 - t0) * kGlWeight8[i] * f(a + t * (b - a));
      }
    }
    return s * len;
  };
  double prev = panels_value(1);
  for (int panels = 2; panels <= 64; panels *= 2) {
    double cur = panels_value(panels);
    if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int panels) {
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    double x0 = a + (b - a) * p / panels;
    double x1 = a + (b - a) * (p + 1) / panels;
    for (int i = 0; i < 8; ++i)
      s += 0.5 * (x1 - x0) * kGlWeight8[i] *
           f(0.5 * (x0 + x1) + 0.5 * (x1 - x0) * kGlNode8[i]);
  }
  return s;
}

double integrate_interval_moment(const std::function<double(double)>& f, double a,
                                 double b, int panels) {
  return integrate_interval([&](double x) { return x * f(x); }, a, b, panels);
}

double integrate_cell(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      int nodes_per_dim) {
  const int d = static_cast<int>(lo.size());
  if (nodes_per_dim != 8)
    throw std::invalid_argument("integrate_cell: only 8 nodes per dim wired");
  std::vector<int> idx(static_cast<size_t>(d), 0);
  double total = 0.0;
  for (;;) {
    Eigen::VectorXd x(d);
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      double mid = 0.5 * (lo[k] + hi[k]);
      double half = 0.5 * (hi[k] - lo[k]);
      x[k] = mid + half * kGlNode8[idx[static_cast<size_t>(k)]];
      w *= half * kGlWeight8[idx[static_cast<size_t>(k)]];
    }
    total += w * f(x);
    int k = 0;
    while (k < d && ++idx[static_cast<size_t>(k)] == 8) idx[static_cast<size_t>(k++)] = 0;
    if (k == d) break;
  }
  return total;
}

Eigen::VectorXd integrate_cell_moment(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int nodes_per_dim) {
  const int d = static_cast<int>(lo.size());
  Eigen::VectorXd m(d);
  for (int k = 0; k < d; ++k)
    m[k] = integrate_cell([&](const Eigen::VectorXd& x) { return x[k] * f(x); },
                          lo, hi, nodes_per_dim);
  return m;
}

SourceDensity make_uniform_density(const Domain& domain) {
  if (!domain.bounded())
    throw std::invalid_argument("uniform density needs a bounded domain");
  SourceDensity s{domain, [](const Eigen::VectorXd&) { return 1.0; }};
  s.normalization = 1.0 / domain.volume();
  s.is_uniform = true;
  s.uniform_value = s.normalization;
  domain.bounding_box(s.box_lo, s.box_hi);
  s.name = "uniform";
  return s;
}

SourceDensity make_gaussian_density(int dim, double sigma) {
  // Covering box at 6.4 sigma: per-axis tail below 2e-10, so the box misses
  // less than 1e-9 of the mass in any dimension <= 3.
  const double R = 6.4 * sigma;
  SourceDensity s{Domain::full_space(dim), [dim, sigma](const Eigen::VectorXd& x) {
                    return std::pow(2.0 * M_PI * sigma * sigma, -0.5 * dim) *
                           std::exp(-0.5 * x.squaredNorm() / (sigma * sigma));
                  }};
  double per_axis = std_normal_cdf(R / sigma) - std_normal_cdf(-R / sigma);
  double in_box = std::pow(per_axis, dim);
  s.mass_deficit = 1.0 - in_box;
  s.normalization = 1.0 / in_box;
  s.box_lo = Eigen::VectorXd::Constant(dim, -R);
  s.box_hi = Eigen::VectorXd::Constant(dim, R);
  s.name = "gaussian";
  s.params = {sigma};
  return s;
}

SourceDensity make_counterexample_density(int n, double alpha,
                                          double xprime_radius, double xn_cap) {
  CounterexampleSpec spec(n, alpha);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, -xprime_radius);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, xprime_radius);
  lo[n - 1] = -xn_cap;
  hi[n - 1] = xn_cap;
  Domain dom = Domain::box(lo, hi);
  SourceDensity s{dom, [spec](const Eigen::VectorXd& x) {
                    return ce_induced_density(spec, x);
                  }};
  s.box_lo = lo;
  s.box_hi = hi;
  // The full integral over X is 1 by the change of variables through the
  // gradient map; the truncated box mass is computed by composite quadrature.
  double mass = 0.0;
  const int cells = 12;
  Eigen::VectorXd clo(n), chi(n);
  std::vector<int> idx(static_cast<size_t>(n), 0);
  for (;;) {
    for (int k = 0; k < n; ++k) {
      clo[k] = lo[k] + (hi[k] - lo[k]) * idx[static_cast<size_t>(k)] / cells;
      chi[k] = lo[k] + (hi[k] - lo[k]) * (idx[static_cast<size_t>(k)] + 1) / cells;
    }
    mass += integrate_cell(s.raw, clo, chi);
    int k = 0;
    while (k < n && ++idx[static_cast<size_t>(k)] == cells) idx[static_cast<size_t>(k++)] = 0;
    if (k == n) break;
  }
  s.mass_deficit = std::max(0.0, 1.0 - mass);
  s.normalization = 1.0 / mass;
  s.name = "counterexample_F";
  s.params = {alpha, xprime_radius, xn_cap};
  return s;
}

SourceDensity make_density_by_name(const std::string& name, int dim,
                                   const std::vector<double>& params) {
  if (name == "uniform") {
    if (params.size() >= static_cast<size_t>(2 * dim)) {
      Eigen::VectorXd lo(dim), hi(dim);
      for (int i = 0; i < dim; ++i) {
        lo[i] = params[static_cast<size_t>(i)];
        hi[i] = params[static_cast<size_t>(dim + i)];
      }
      return make_uniform_density(Domain::box(lo, hi));
    }
    return make_uniform_density(Domain::box(Eigen::VectorXd::Zero(dim),
                                            Eigen::VectorXd::Ones(dim)));
  }
  if (name == "gaussian")
    return make_gaussian_density(dim, params.empty() ? 1.0 : params[0]);
  if (name == "counterexample_F") {
    double alpha = params.empty() ? CounterexampleSpec::admissible_alpha_midpoint(dim)
                                  : params[0];
    double radius = params.size() > 1 ? params[1] : 2.0;
    double cap = params.size() > 2 ? params[2] : 0.995;
    return make_counterexample_density(dim, alpha, radius, cap);
  }
  throw std::invalid_argument("unknown density name: " + name);
}

}  // namespace sdot
