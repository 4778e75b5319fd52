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

#include "sdot/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "sdot/rng.hpp"

namespace sdot {

namespace {

// Surface area of the unit sphere S^(d-1).
double sphere_area(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

// Weighted least squares of log(volume) on log(theta); returns slope and its
// standard error.
void fit_exponent(const std::vector<double>& th, const std::vector<double>& v,
                  const std::vector<double>& w, double& slope, double& se) {
  const size_t m = th.size();
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    double x = std::log(th[i]), y = std::log(v[i]);
    sw += w[i];
    sx += w[i] * x;
    sy += w[i] * y;
    sxx += w[i] * x * x;
    sxy += w[i] * x * y;
  }
  double det = sw * sxx - sx * sx;
  slope = (sw * sxy - sx * sy) / det;
  double icpt = (sy - slope * sx) / sw;
  double ss = 0;
  for (size_t i = 0; i < m; ++i) {
    double x = std::log(th[i]), r = std::log(v[i]) - icpt - slope * x;
    ss += w[i] * r * r;
  }
  double dof = static_cast<double>(m > 2 ? m - 2 : 1);
  se = std::sqrt(std::max(ss / dof, 1e-30) * sw / det);
}

bool in_wedge(int n, double lambda, double c, double theta,
              const Eigen::VectorXd& x) {
  double s = x.tail(n - 1).norm();
  return -theta * s <= x[0] && x[0] <= -c * std::pow(s, lambda);
}

}  // namespace

ScalingReport wedge_volume_scaling(int n, double lambda, double c,
                                   const std::vector<double>& thetas,
                                   std::size_t samples, std::uint64_t seed) {
  if (lambda <= 1.0 || c <= 0.0 || n < 2)
    throw std::invalid_argument("wedge_volume_scaling: need n >= 2, lambda > 1, c > 0");
  if (thetas.size() < 3)
    throw std::invalid_argument("wedge_volume_scaling: need >= 3 theta values");

  ScalingReport rep;
  rep.theoretical_exponent = (n - 1 + lambda) / (lambda - 1.0);
  const double area = sphere_area(n - 1);

  std::vector<double> fth, fv, fw;
  for (size_t k = 0; k < thetas.size(); ++k) {
    const double theta = thetas[k];
    ScalingRow row;
    row.theta = theta;
    // radial profile: slice thickness theta*s - c*s^lambda for s <= r
    const double r = std::pow(theta / c, 1.0 / (lambda - 1.0));
    row.volume = area * (theta * std::pow(r, n) / n -
                         c * std::pow(r, lambda + n - 1) / (lambda + n - 1));

    // rejection estimate in the slab [-theta*r, 0] x [-r, r]^(n-1)
    Rng rng(seed + 977u * k);
    Eigen::VectorXd lo(n), hi(n);
    lo[0] = -theta * r;
    hi[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      lo[i] = -r;
      hi[i] = r;
    }
    double boxvol = theta * r * std::pow(2.0 * r, n - 1);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
      if (in_wedge(n, lambda, c, theta, rng.uniform_in_box(lo, hi))) ++hits;
    double p = static_cast<double>(hits) / samples;
    row.mc_volume = p * boxvol;
    row.mc_stderr = boxvol * std::sqrt(std::max(p * (1.0 - p), 0.0) / samples);

    row.used_in_fit =
        row.mc_volume > 0.0 && row.mc_stderr <= 0.01 * row.mc_volume;
    if (row.used_in_fit) {
      fth.push_back(theta);
      fv.push_back(row.volume);
      double rel = row.mc_stderr / row.volume;
      fw.push_back(1.0 / (rel * rel));
    }
    rep.rows.push_back(row);
  }
  if (fth.size() < 3)
    throw std::runtime_error("wedge_volume_scaling: too few points under 1% error");

  double slope, se;
  fit_exponent(fth, fv, fw, slope, se);
  rep.fitted_exponent = slope;
  double half = std::max(2.0 * se, 1e-6);
  rep.ci_low = slope - half;
  rep.ci_high = slope + half;
  rep.verdict = (rep.ci_low <= rep.theoretical_exponent &&
                 rep.theoretical_exponent <= rep.ci_high)
                    ? "MATCH"
                    : "MISMATCH";
  return rep;
}

ScalingReport cone_volume_scaling(const Domain& Y,
                                  const std::vector<double>& thetas,
                                  std::size_t samples, std::uint64_t seed) {
  const int n = Y.dim();
  if (!Y.convex()) throw std::invalid_argument("cone_volume_scaling: Y not convex");
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
  if (!Y.contains(zero, 1e-9) || !Y.contains(e1, 1e-9))
    throw std::invalid_argument("cone_volume_scaling: Y must contain 0 and e_1");
  if (thetas.size() < 3)
    throw std::invalid_argument("cone_volume_scaling: need >= 3 theta values");

  ScalingReport rep;
  rep.theoretical_exponent = static_cast<double>(n - 1);
  const bool exact = Y.kind() == Domain::Kind::kFullSpace && n == 3;

  std::vector<double> fth, fv, fw;
  double minq = 1e300;
  for (size_t k = 0; k < thetas.size(); ++k) {
    const double theta = thetas[k];
    ScalingRow row;
    row.theta = theta;

    // sampling slab adapted to the cone: y_1 in (0, 2], |y'_i| <= 2 theta
    Rng rng(seed + 977u * k);
    Eigen::VectorXd lo(n), hi(n);
    lo[0] = 0.0;
    hi[0] = 2.0;
    for (int i = 1; i < n; ++i) {
      lo[i] = -2.0 * theta;
      hi[i] = 2.0 * theta;
    }
    double boxvol = 2.0 * std::pow(4.0 * theta, n - 1);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      Eigen::VectorXd y = rng.uniform_in_box(lo, hi);
      if (y.norm() > 2.0) continue;
      if (y.tail(n - 1).norm() > theta * y[0]) continue;
      if (!Y.contains(y, 1e-12)) continue;
      ++hits;
    }
    double p = static_cast<double>(hits) / samples;
    row.mc_volume = p * boxvol;
    row.mc_stderr = boxvol * std::sqrt(std::max(p * (1.0 - p), 0.0) / samples);

    if (exact) {
      // spherical sector of B_2 with half-angle atan(theta)
      double phi = std::atan(theta);
      row.volume = 2.0 * M_PI * (1.0 - std::cos(phi)) * 8.0 / 3.0;
    } else {
      row.volume = row.mc_volume;
    }

    row.used_in_fit =
        row.mc_volume > 0.0 && row.mc_stderr <= 0.01 * std::max(row.volume, row.mc_volume);
    if (row.used_in_fit) {
      fth.push_back(theta);
      fv.push_back(row.volume);
      double rel = row.mc_stderr / std::max(row.volume, 1e-300);
      fw.push_back(1.0 / std::max(rel * rel, 1e-12));
      minq = std::min(minq, row.volume / std::pow(theta, n - 1));
    }
    rep.rows.push_back(row);
  }
  if (fth.size() < 3)
    throw std::runtime_error("cone_volume_scaling: too few points under 1% error");

  double slope, se;
  fit_exponent(fth, fv, fw, slope, se);
  rep.fitted_exponent = slope;
  double half = std::max(2.0 * se, 1e-6);
  rep.ci_low = slope - half;
  rep.ci_high = slope + half;
  rep.min_normalized_volume = minq;
  // lower-bound form: exponent no larger than n-1 (up to CI) and the
  // normalized volumes bounded away from zero on the grid
  rep.verdict = (rep.ci_low <= rep.theoretical_exponent + 0.1 && minq > 0.0)
                    ? "LOWER_BOUND_OK"
                    : "LOWER_BOUND_FAIL";
  return rep;
}

double lambda_threshold(int n) {
  if (n <= 2)
    throw std::invalid_argument("lambda_threshold: defined for n >= 3 only");
  return 2.0 * (n - 1) / (n - 2);
}

LambdaClass classify_lambda(int n, double lambda, double tol) {
  double t = lambda_threshold(n);
  if (lambda < t - tol) return LambdaClass::kAdmissible;
  if (lambda <= t + tol) return LambdaClass::kBorderline;
  return LambdaClass::kInadmissible;
}

namespace {

// Diameter of the union of the listed cells, from their geometric
// representation (interval hull in 1D, polygon vertices in 2D, labeled grid
// nodes in 3D).
double cells_union_diameter(const LaguerreDiagram& d,
                            const std::vector<char>& selected) {
  const int n = d.dim;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, 1e300);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, -1e300);
  bool any = false;
  auto absorb = [&](const Eigen::VectorXd& x) {
    any = true;
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  };
  if (n == 1) {
    for (size_t i = 0; i < d.cells1d.size(); ++i) {
      if (!selected[i] || d.cells1d[i][1] <= d.cells1d[i][0]) continue;
      Eigen::VectorXd a(1), b(1);
      a[0] = d.cells1d[i][0];
      b[0] = d.cells1d[i][1];
      absorb(a);
      absorb(b);
    }
  } else if (n == 2) {
    for (size_t i = 0; i < d.cells2d.size(); ++i) {
      if (!selected[i]) continue;
      for (const auto& v : d.cells2d[i].v) absorb(Eigen::VectorXd(v));
    }
  } else {
    const auto& g = d.grid;
    std::size_t node = 0;
    for (int ix = 0; ix < g.res[0]; ++ix)
      for (int iy = 0; iy < g.res[1]; ++iy)
        for (int iz = 0; iz < g.res[2]; ++iz, ++node) {
          int lab = d.labels[node];
          if (lab < 0 || !selected[static_cast<size_t>(lab)]) continue;
          Eigen::VectorXd x(3);
          x[0] = g.lo[0] + (ix + 0.5) * (g.hi[0] - g.lo[0]) / g.res[0];
          x[1] = g.lo[1] + (iy + 0.5) * (g.hi[1] - g.lo[1]) / g.res[1];
          x[2] = g.lo[2] + (iz + 0.5) * (g.hi[2] - g.lo[2]) / g.res[2];
          absorb(x);
        }
  }
  return any ? (hi - lo).norm() : 0.0;
}

}  // namespace

ProbeReport strict_convexity_probe(const SourceDensity& source,
                                   const SourceDensity& target_density,
                                   const std::vector<int>& levels,
                                   const std::vector<Eigen::VectorXd>& probe_targets,
                                   double truncation_radius, std::uint64_t seed,
                                   QuantizeMode mode, const LaguerreConfig& cfg,
                                   double solver_tol) {
  if (levels.empty())
    throw std::invalid_argument("strict_convexity_probe: empty level list");
  ProbeReport rep;

  // neighborhood radius shrinks like N^(-1/n) from a base set by the target
  // box extent at the coarsest level
  const int n = static_cast<int>(source.box_lo.size());
  const double base_extent =
      (target_density.box_hi - target_density.box_lo).norm();
  const double delta0 = 0.25 * base_extent;
  const int N0 = levels.front();

  for (int N : levels) {
    DiscreteMeasure target =
        quantize_target(target_density, N, truncation_radius, seed, mode);
    LaguerreConfig level_cfg = cfg;
    if (n >= 3 && N >= 512) level_cfg.grid_res = std::max(cfg.grid_res, 96);
    SolveResult sol = solve_weights(source, target, solver_tol, 200, level_cfg);

    ProbeLevelRow row;
    row.N = N;
    row.iterations = sol.iterations;
    row.max_cell_diameter = sol.diagram.max_cell_diameter();
    row.neighborhood_radius =
        delta0 * std::pow(static_cast<double>(N0) / N, 1.0 / n);

    double worst = 0.0;
    for (const auto& p : probe_targets) {
      std::vector<char> sel(target.size(), 0);
      bool any = false;
      for (size_t i = 0; i < target.size(); ++i)
        if ((target.points[i] - p).norm() <= row.neighborhood_radius) {
          sel[i] = 1;
          any = true;
        }
      if (!any) {
        // fall back to the nearest atom so the preimage is never empty
        size_t best = 0;
        double bd = 1e300;
        for (size_t i = 0; i < target.size(); ++i) {
          double dd = (target.points[i] - p).norm();
          if (dd < bd) {
            bd = dd;
            best = i;
          }
        }
        sel[best] = 1;
      }
      worst = std::max(worst, cells_union_diameter(sol.diagram, sel));
    }
    row.max_preimage_diameter = worst;
    rep.rows.push_back(row);
  }

  if (rep.rows.size() < 2 || rep.rows.back().N <= 1) {
    rep.degenerate = true;
  } else {
    const auto& a = rep.rows[rep.rows.size() - 2];
    const auto& b = rep.rows.back();
    double refine = static_cast<double>(b.N) / a.N;
    double required = std::pow(1.5, std::log(refine) / std::log(4.0));
    auto decays = [&](double prev, double last) {
      if (last <= 1e-12) return true;
      return prev / last >= required;
    };
    // Cell diameters are reported as context only: where the density decays
    // (unbounded sources) the outermost cells stay geometrically large at
    // every level even for perfectly regular maps, so the flag rests on the
    // preimage diameters of the shrinking target neighborhoods.
    rep.degenerate = !decays(a.max_preimage_diameter, b.max_preimage_diameter);
  }
  rep.flag = rep.degenerate ? "DEGENERATE" : "REGULAR";
  return rep;
}

}  // namespace sdot
