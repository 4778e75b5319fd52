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

#include "sdot/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "sdot/linprog.hpp"
#include "sdot/rng.hpp"

namespace sdot {

namespace {

// Supremum of the normalized density over its integration box, estimated on a
// deterministic probe cloud and padded; used as the rejection envelope.
double density_sup(const SourceDensity& source) {
  if (source.is_uniform) return source.uniform_value;
  Rng rng(0x5eedu);
  const int d = static_cast<int>(source.box_lo.size());
  double best = 0.0;
  for (int k = 0; k < 20000; ++k) {
    Eigen::VectorXd x = rng.uniform_in_box(source.box_lo, source.box_hi);
    best = std::max(best, source(x));
  }
  // also try the box center and axis midpoints
  Eigen::VectorXd c = 0.5 * (source.box_lo + source.box_hi);
  best = std::max(best, source(c));
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd x = c;
    x[i] = source.box_lo[i];
    best = std::max(best, source(x));
    x[i] = source.box_hi[i];
    best = std::max(best, source(x));
  }
  return best * 1.5;
}

bool point_in_hull(const std::vector<Eigen::VectorXd>& pts,
                   const Eigen::VectorXd& y, double tol) {
  // feasibility LP: y = sum lambda_i p_i, sum lambda_i = 1, lambda >= 0
  const int d = static_cast<int>(y.size());
  const int m = static_cast<int>(pts.size());
  Eigen::MatrixXd A(d + 1, m);
  Eigen::VectorXd b(d + 1);
  for (int j = 0; j < m; ++j) {
    A.block(0, j, d, 1) = pts[static_cast<size_t>(j)];
    A(d, j) = 1.0;
  }
  b.head(d) = y;
  b[d] = 1.0;
  LpResult r = solve_lp(A, b, Eigen::VectorXd::Zero(m));
  if (r.status == LpResult::Status::kOptimal) return true;
  if (tol <= 0.0) return false;
  // tolerance retry: perturb toward the centroid
  Eigen::VectorXd cen = Eigen::VectorXd::Zero(d);
  for (const auto& p : pts) cen += p;
  cen /= m;
  Eigen::VectorXd dir = cen - y;
  double nrm = dir.norm();
  if (nrm < 1e-300) return true;
  b.head(d) = y + dir * (tol / nrm);
  return solve_lp(A, b, Eigen::VectorXd::Zero(m)).status ==
         LpResult::Status::kOptimal;
}

}  // namespace

std::vector<double> pushforward_empirical_masses(const LaguerreDiagram& diagram,
                                                 const SourceDensity& source,
                                                 const DiscreteMeasure& target,
                                                 std::size_t n_samples,
                                                 std::uint64_t seed) {
  if (source.box_lo.size() == 0)
    throw std::runtime_error("verify_pushforward: source has no covering box");
  if (target.size() == 1) return {1.0};

  const double fmax = density_sup(source);
  Rng rng(seed);
  std::vector<std::size_t> counts(target.size(), 0);
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = n_samples * 1000 + 1000000;
  while (accepted < n_samples) {
    if (++attempts > max_attempts)
      throw std::runtime_error("verify_pushforward: rejection sampling stalled");
    Eigen::VectorXd x = rng.uniform_in_box(source.box_lo, source.box_hi);
    double f = source(x);
    if (f <= 0.0) continue;
    if (rng.uniform() * fmax > f) continue;
    ++accepted;
    auto [idx, y] = transport_map(diagram, x);
    (void)y;
    ++counts[static_cast<size_t>(idx)];
  }
  std::vector<double> emp(target.size());
  for (size_t i = 0; i < target.size(); ++i)
    emp[i] = static_cast<double>(counts[i]) / static_cast<double>(n_samples);
  return emp;
}

double verify_pushforward(const LaguerreDiagram& diagram,
                          const SourceDensity& source,
                          const DiscreteMeasure& target,
                          std::size_t n_samples, std::uint64_t seed) {
  std::vector<double> emp =
      pushforward_empirical_masses(diagram, source, target, n_samples, seed);
  double err = 0.0;
  for (size_t i = 0; i < target.size(); ++i)
    err = std::max(err, std::abs(emp[i] - target.masses[i]));
  return err;
}

AlexandrovReport verify_alexandrov(const LaguerreDiagram& diagram,
                                   const SourceDensity& source,
                                   const DiscreteMeasure& target,
                                   const std::vector<Domain>& probe_regions,
                                   double tol) {
  AlexandrovReport rep;
  const size_t N = target.size();

  // (a) cell masses against target atoms.  The diagram carries the
  // integrated masses already; they are the Monge-Ampere mass the potential
  // assigns to each atom y_i, since du^{-1}({y_i}) is cell_i up to null sets.
  rep.cell_masses = diagram.masses;
  rep.cell_mass_errors.resize(N);
  for (size_t i = 0; i < N; ++i) {
    rep.cell_mass_errors[i] = std::abs(diagram.masses[i] - target.masses[i]);
    rep.max_cell_mass_error =
        std::max(rep.max_cell_mass_error, rep.cell_mass_errors[i]);
  }

  // (b) probe regions; measured on the conjugate side.  The potential's
  // subdifferential image of a spatial probe A is the set of atoms whose
  // cells meet A, so |du(A)| = sum of masses of those atoms restricted to
  // cells intersecting A.  A probe disjoint from the closure of X meets no
  // cell and carries zero mass.
  PiecewiseAffinePotential u = diagram.potential();
  for (const Domain& probe : probe_regions) {
    ProbeResult pr;
    pr.region = probe;
    if (!probe.bounded())
      throw std::invalid_argument("verify_alexandrov: unbounded probe region");

    // disjointness test on a fine deterministic grid of the probe box
    Eigen::VectorXd lo, hi;
    probe.bounding_box(lo, hi);
    bool meets = false;
    const int d = probe.dim();
    const int res = d <= 2 ? 64 : 24;
    std::vector<int> idx(static_cast<size_t>(d), 0);
    for (;;) {
      Eigen::VectorXd x(d);
      for (int k = 0; k < d; ++k) {
        double t = (idx[static_cast<size_t>(k)] + 0.5) / res;
        x[k] = lo[k] + t * (hi[k] - lo[k]);
      }
      if (probe.contains(x) && source.domain.contains(x, 1e-9)) {
        meets = true;
        break;
      }
      int k = 0;
      while (k < d && ++idx[static_cast<size_t>(k)] == res) idx[static_cast<size_t>(k++)] = 0;
      if (k == d) break;
    }
    pr.disjoint_from_source = !meets;

    if (!meets) {
      pr.ma_mass = 0.0;
      pr.pass = true;
    } else {
      // accumulate F-mass of cell pieces inside the probe: exact in 1D,
      // grid quadrature otherwise via the diagram's own representation.
      double mass = 0.0;
      if (diagram.dim == 1) {
        for (size_t i = 0; i < N; ++i) {
          double a = std::max(diagram.cells1d[i][0], lo[0]);
          double b = std::min(diagram.cells1d[i][1], hi[0]);
          if (b <= a) continue;
          mass += integrate_interval(
              [&](double t) {
                Eigen::VectorXd x(1);
                x[0] = t;
                return probe.contains(x) ? source(x) : 0.0;
              },
              a, b, 32);
        }
      } else if (diagram.dim == 2) {
        for (size_t i = 0; i < N; ++i) {
          const auto& poly = diagram.cells2d[i].v;
          if (poly.size() < 3) continue;
          mass += integrate_polygon(
              [&](const Eigen::Vector2d& p) {
                Eigen::VectorXd x = p;
                return probe.contains(x) ? source(x) : 0.0;
              },
              poly, 1e-9);
        }
      } else {
        const auto& g = diagram.grid;
        double cellvol = 1.0;
        for (int k = 0; k < 3; ++k)
          cellvol *= (g.hi[k] - g.lo[k]) / g.res[static_cast<size_t>(k)];
        std::size_t node = 0;
        for (int ix = 0; ix < g.res[0]; ++ix)
          for (int iy = 0; iy < g.res[1]; ++iy)
            for (int iz = 0; iz < g.res[2]; ++iz, ++node) {
              if (diagram.labels[node] < 0) continue;
              Eigen::VectorXd x(3);
              x[0] = g.lo[0] + (ix + 0.5) * (g.hi[0] - g.lo[0]) / g.res[0];
              x[1] = g.lo[1] + (iy + 0.5) * (g.hi[1] - g.lo[1]) / g.res[1];
              x[2] = g.lo[2] + (iz + 0.5) * (g.hi[2] - g.lo[2]) / g.res[2];
              if (probe.contains(x)) mass += source(x) * cellvol;
            }
      }
      pr.ma_mass = mass;
      pr.pass = true;  // informational; the pass criterion is the disjoint case
    }
    rep.probes.push_back(std::move(pr));
  }

  // (c) slope containment and hull exhaustion
  double covered = 0.0;
  for (size_t i = 0; i < N; ++i) {
    if (!point_in_hull(target.points, diagram.points[i], 1e-9)) {
      rep.slopes_in_target_hull = false;
    }
    if (point_in_hull(diagram.points, target.points[i], 1e-9))
      covered += target.masses[i];
  }
  rep.hull_exhaustion = covered;

  bool probes_ok = true;
  for (const auto& pr : rep.probes)
    if (pr.disjoint_from_source && std::abs(pr.ma_mass) > tol) probes_ok = false;
  rep.pass = rep.max_cell_mass_error <= tol && probes_ok &&
             rep.slopes_in_target_hull && rep.hull_exhaustion >= 1.0 - 1e-9;
  return rep;
}

}  // namespace sdot
