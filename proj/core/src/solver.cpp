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

#include "sdot/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace sdot {

namespace {

double max_residual(const LaguerreDiagram& d, const DiscreteMeasure& t) {
  double r = 0.0;
  for (size_t i = 0; i < t.masses.size(); ++i)
    r = std::max(r, std::abs(d.masses[i] - t.masses[i]));
  return r;
}

double min_mass(const LaguerreDiagram& d) {
  double m = 1e300;
  for (double v : d.masses) m = std::min(m, v);
  return m;
}

}  // namespace

SolveResult solve_weights(const LaguerreBuilder& builder, double tol,
                          int max_iter) {
  const DiscreteMeasure& target = builder.target();
  const int n = static_cast<int>(target.size());
  // cell masses move in grid-node jumps on the 3D backend, so residuals
  // below that granularity are unreachable
  tol = std::max(tol, 2.0 * builder.mass_resolution());
  double min_target = 1e300;
  for (double m : target.masses) min_target = std::min(min_target, m);

  if (n == 1) {
    Eigen::VectorXd w1 = Eigen::VectorXd::Zero(1);
    SolveResult res{w1, builder.build(w1), 0, 0.0, true};
    res.residual = max_residual(res.diagram, target);
    res.converged = res.residual <= std::max(tol, 1e-12);
    return res;
  }

  // Initialization: tangent pieces of a quadratic whose gradient maps the
  // source box affinely onto the atom bounding box.  Each piece is then
  // active near its own tangency point, so no cell starts empty.
  const int dim = target.dim();
  Eigen::VectorXd xlo = builder.source().box_lo, xhi = builder.source().box_hi;
  Eigen::VectorXd ylo = target.points[0], yhi = target.points[0];
  for (const auto& y : target.points) {
    ylo = ylo.cwiseMin(y);
    yhi = yhi.cwiseMax(y);
  }
  Eigen::VectorXd s(dim);
  for (int k = 0; k < dim; ++k) {
    double dx = std::max(xhi[k] - xlo[k], 1e-12);
    double dy = yhi[k] - ylo[k];
    s[k] = dy > 1e-12 ? dy / dx : 1.0;
  }
  auto phi = [&](const Eigen::VectorXd& x) {
    double v = 0.0;
    for (int k = 0; k < dim; ++k)
      v += ylo[k] * x[k] + s[k] * (0.5 * x[k] * x[k] - xlo[k] * x[k]);
    return v;
  };
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd& y = target.points[static_cast<size_t>(i)];
    Eigen::VectorXd xi(dim);
    for (int k = 0; k < dim; ++k)
      xi[k] = xlo[k] + (y[k] - ylo[k]) / s[k];
    w[i] = xi.dot(y) - phi(xi);
  }
  w.array() -= w[0];
  LaguerreDiagram d = builder.build(w);

  // Repair any residual starved cell by inflating its piece.
  {
    double scale = 0.0;
    for (const auto& y : target.points)
      scale = std::max(scale, y.norm() * (xhi - xlo).norm());
    int guard = 0;
    while (min_mass(d) <= 0.0 && ++guard <= 400) {
      for (int i = 0; i < n; ++i)
        if (d.masses[static_cast<size_t>(i)] <= 0.0)
          w[i] -= 0.01 * std::max(scale, 1.0);
      d = builder.build(w);
    }
    if (min_mass(d) <= 0.0)
      throw std::runtime_error("solve_weights: could not repair empty cells");
  }

  double residual = max_residual(d, target);
  int iter = 0;
  // keep every cell above a fraction of the smallest target mass, relaxed
  // when the initialization itself starts thinner than that
  const double mass_floor = std::min(0.1 * min_target, 0.5 * min_mass(d));

  while (residual > tol && iter < max_iter) {
    ++iter;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i)
      r[i] = d.masses[static_cast<size_t>(i)] - target.masses[static_cast<size_t>(i)];

    Eigen::MatrixXd G = builder.dual_hessian(d);
    // Reduced system with w_0 pinned at 0.
    Eigen::MatrixXd Gr = G.bottomRightCorner(n - 1, n - 1);
    Eigen::VectorXd rr = r.tail(n - 1);
    const double maxdiag = std::max(1e-12, Gr.diagonal().maxCoeff());

    // Armijo damping on the convex dual objective, plus the cell-mass floor.
    // A poorly conditioned Hessian can yield a useless Newton direction even
    // when the factorization succeeds, so on line-search failure the
    // regularization is escalated and the search retried; the last rung is a
    // plain scaled gradient step.
    const double phi0 = builder.dual_value(d);
    Eigen::VectorXd step = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd best_step = step;
    bool accepted = false;
    double s = 1.0, best_s = 0.0, best_phi = phi0;
    for (double mu : {0.0, 1e-12, 1e-8, 1e-4, 1e-2, 1.0, -1.0}) {
      if (mu < 0.0) {
        // coordinate-ascent flavored fallback: scaled gradient on the dual
        step.tail(n - 1) = rr / maxdiag;
      } else {
        Eigen::MatrixXd M = Gr;
        if (mu > 0.0) M.diagonal().array() += mu * maxdiag;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
        if (ldlt.info() != Eigen::Success) continue;
        Eigen::VectorXd sol = ldlt.solve(rr);
        if (!sol.allFinite()) continue;
        step.tail(n - 1) = sol;
      }
      const double pred = rr.dot(step.tail(n - 1));  // directional decrease
      if (!(pred > 0.0)) continue;
      s = 1.0;
      for (int h = 0; h < 40; ++h) {
        LaguerreDiagram trial = builder.build(w + s * step);
        double phi = builder.dual_value(trial);
        if (phi < best_phi) {
          best_phi = phi;
          best_s = s;
          best_step = step;
        }
        if (min_mass(trial) >= mass_floor &&
            phi <= phi0 - 1e-4 * s * pred + 1e-13 * std::abs(phi0)) {
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      // Escalating the regularization is only worthwhile when this direction
      // made no progress at any damping; a merely-improving step is taken
      // instead of paying for further factorizations and line searches.
      if (accepted || best_s > 0.0) break;
    }
    if (!accepted) {
      // fall back to the best merely-improving damped step seen so far
      if (best_s > 0.0) {
        s = best_s;
        step = best_step;
      } else {
        throw std::runtime_error(
            "solve_weights: line search stalled at residual " +
            std::to_string(residual));
      }
    }
    w += s * step;
    w.array() -= w[0];  // keep the normalization w_0 = 0
    d = builder.build(w);
    residual = max_residual(d, target);
  }

  SolveResult res;
  res.weights = w;
  res.diagram = std::move(d);
  res.iterations = iter;
  res.residual = residual;
  res.converged = residual <= tol;
  if (!res.converged)
    throw std::runtime_error("solve_weights: no convergence in " +
                             std::to_string(max_iter) +
                             " iterations, residual " + std::to_string(residual));
  return res;
}

SolveResult solve_weights(const SourceDensity& source,
                          const DiscreteMeasure& target, double tol,
                          int max_iter, const LaguerreConfig& cfg) {
  LaguerreBuilder builder(source, target, cfg);
  return solve_weights(builder, tol, max_iter);
}

std::pair<int, Eigen::VectorXd> transport_map(const LaguerreDiagram& diagram,
                                              const Eigen::VectorXd& x) {
  if (!diagram.source_domain.contains(x, 1e-12))
    throw std::invalid_argument("transport_map: x outside X");
  int best = 0;
  double bv = -1e300;
  for (size_t i = 0; i < diagram.points.size(); ++i) {
    double v = diagram.points[i].dot(x) - diagram.weights[static_cast<Eigen::Index>(i)];
    if (v > bv) {
      bv = v;
      best = static_cast<int>(i);
    }
  }
  return {best, diagram.points[static_cast<size_t>(best)]};
}

}  // namespace sdot
