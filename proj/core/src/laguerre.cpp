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

#include "sdot/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace sdot {

PiecewiseAffinePotential LaguerreDiagram::potential() const {
  std::vector<AffinePiece> pieces;
  pieces.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i)
    pieces.push_back({points[i], -weights[static_cast<Eigen::Index>(i)]});
  return PiecewiseAffinePotential(dim, std::move(pieces));
}

double LaguerreDiagram::max_cell_diameter() const {
  double d = 0.0;
  if (dim == 1) {
    for (const auto& c : cells1d)
      if (c[1] > c[0]) d = std::max(d, c[1] - c[0]);
  } else if (dim == 2) {
    for (const auto& c : cells2d)
      if (!c.empty()) d = std::max(d, polygon_diameter(c.v));
  } else {
    // per-cell axis-aligned extents over labeled grid nodes
    const size_t n = points.size();
    std::vector<Eigen::Vector3d> lo(n, Eigen::Vector3d::Constant(1e300));
    std::vector<Eigen::Vector3d> hi(n, Eigen::Vector3d::Constant(-1e300));
    std::size_t idx = 0;
    for (int i = 0; i < grid.res[0]; ++i) {
      for (int j = 0; j < grid.res[1]; ++j) {
        for (int k = 0; k < grid.res[2]; ++k, ++idx) {
          std::int32_t c = labels[idx];
          if (c < 0) continue;
          Eigen::Vector3d x(
              grid.lo[0] + (i + 0.5) * (grid.hi[0] - grid.lo[0]) / grid.res[0],
              grid.lo[1] + (j + 0.5) * (grid.hi[1] - grid.lo[1]) / grid.res[1],
              grid.lo[2] + (k + 0.5) * (grid.hi[2] - grid.lo[2]) / grid.res[2]);
          lo[static_cast<size_t>(c)] = lo[static_cast<size_t>(c)].cwiseMin(x);
          hi[static_cast<size_t>(c)] = hi[static_cast<size_t>(c)].cwiseMax(x);
        }
      }
    }
    for (size_t c = 0; c < n; ++c)
      if (hi[c][0] > -1e299) d = std::max(d, (hi[c] - lo[c]).norm());
  }
  return d;
}

LaguerreBuilder::LaguerreBuilder(SourceDensity source, DiscreteMeasure target,
                                 LaguerreConfig cfg)
    : source_(std::move(source)), target_(std::move(target)), cfg_(cfg) {
  target_.validate();
  const int dim = target_.dim();
  if (dim == 1) {
    x_lo_ = source_.box_lo[0];
    x_hi_ = source_.box_hi[0];
  } else if (dim == 2) {
    switch (source_.domain.kind()) {
      case Domain::Kind::kBox:
        domain_poly_ = make_box_polygon(source_.domain.box_lo().head<2>(),
                                        source_.domain.box_hi().head<2>());
        break;
      case Domain::Kind::kBall:
        domain_poly_ = make_regular_polygon(source_.domain.center().head<2>(),
                                            source_.domain.radius(), cfg_.ball_sides);
        break;
      case Domain::Kind::kPolygon: {
        domain_poly_.v = source_.domain.polygon_vertices();
        domain_poly_.label.assign(domain_poly_.v.size(), -1);
        break;
      }
      default:
        // unbounded X: integrate over the certified covering box
        domain_poly_ = make_box_polygon(source_.box_lo.head<2>(),
                                        source_.box_hi.head<2>());
    }
  } else if (dim == 3) {
    grid_.lo = source_.box_lo;
    grid_.hi = source_.box_hi;
    grid_.res = {cfg_.grid_res, cfg_.grid_res, cfg_.grid_res};
    const std::size_t total = grid_.size();
    grid_pts_.reserve(total);
    grid_density_.reserve(total);
    double cellvol = 1.0;
    for (int k = 0; k < 3; ++k)
      cellvol *= (grid_.hi[k] - grid_.lo[k]) / grid_.res[k];
    double sum = 0.0;
    for (int i = 0; i < grid_.res[0]; ++i) {
      for (int j = 0; j < grid_.res[1]; ++j) {
        for (int k = 0; k < grid_.res[2]; ++k) {
          Eigen::VectorXd x(3);
          x << grid_.lo[0] + (i + 0.5) * (grid_.hi[0] - grid_.lo[0]) / grid_.res[0],
              grid_.lo[1] + (j + 0.5) * (grid_.hi[1] - grid_.lo[1]) / grid_.res[1],
              grid_.lo[2] + (k + 0.5) * (grid_.hi[2] - grid_.lo[2]) / grid_.res[2];
          double w = source_(x) * cellvol;
          grid_pts_.push_back(std::move(x));
          grid_density_.push_back(w);
          sum += w;
        }
      }
    }
    if (sum <= 0.0) throw std::runtime_error("LaguerreBuilder: empty 3D source");
    for (double& w : grid_density_) w /= sum;
  } else {
    throw std::invalid_argument("LaguerreBuilder: dim must be 1, 2 or 3");
  }
}

LaguerreDiagram LaguerreBuilder::build(const Eigen::VectorXd& weights) const {
  const int dim = target_.dim();
  const int n = static_cast<int>(target_.size());
  if (weights.size() != n)
    throw std::invalid_argument("laguerre: weights length mismatch");

  LaguerreDiagram d;
  d.dim = dim;
  d.points = target_.points;
  d.weights = weights;
  d.masses.assign(static_cast<size_t>(n), 0.0);
  d.source_domain = source_.domain;
  d.box_lo = source_.box_lo;
  d.box_hi = source_.box_hi;

  std::set<std::pair<int, int>> adj;

  if (dim == 1) {
    d.cells1d.assign(static_cast<size_t>(n), {1.0, 0.0});
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return target_.points[static_cast<size_t>(a)][0] <
             target_.points[static_cast<size_t>(b)][0];
    });
    for (int i = 0; i < n; ++i) {
      double lo = x_lo_, hi = x_hi_;
      double yi = target_.points[static_cast<size_t>(i)][0];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        double yj = target_.points[static_cast<size_t>(j)][0];
        double bnd = (weights[i] - weights[j]) / (yi - yj);
        if (yj < yi)
          lo = std::max(lo, bnd);
        else
          hi = std::min(hi, bnd);
      }
      if (hi > lo) {
        d.cells1d[static_cast<size_t>(i)] = {lo, hi};
        auto f1 = [&](double x) {
          Eigen::VectorXd v(1);
          v[0] = x;
          return source_(v);
        };
        d.masses[static_cast<size_t>(i)] =
            source_.is_uniform ? source_.uniform_value * (hi - lo)
                               : integrate_interval(f1, lo, hi, 32);
      }
    }
    for (size_t k = 0; k + 1 < order.size(); ++k) {
      int a = order[k], b = order[k + 1];
      if (d.cells1d[static_cast<size_t>(a)][1] > d.cells1d[static_cast<size_t>(a)][0] &&
          d.cells1d[static_cast<size_t>(b)][1] > d.cells1d[static_cast<size_t>(b)][0])
        adj.insert({std::min(a, b), std::max(a, b)});
    }
  } else if (dim == 2) {
    d.cells2d.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      LabeledPolygon cell = domain_poly_;
      const Eigen::VectorXd& yi = target_.points[static_cast<size_t>(i)];
      for (int j = 0; j < n && !cell.empty(); ++j) {
        if (j == i) continue;
        const Eigen::VectorXd& yj = target_.points[static_cast<size_t>(j)];
        Eigen::Vector2d nrm = (yj - yi).head<2>();
        cell = clip_polygon(cell, nrm, weights[j] - weights[i], j);
      }
      if (!cell.empty()) {
        if (source_.is_uniform) {
          d.masses[static_cast<size_t>(i)] =
              integrate_polygon_uniform(source_.uniform_value, cell.v);
        } else {
          auto f2 = [&](const Eigen::Vector2d& p) {
            Eigen::VectorXd v(2);
            v << p.x(), p.y();
            return source_(v);
          };
          d.masses[static_cast<size_t>(i)] =
              integrate_polygon(f2, cell.v, cfg_.mass_rel_tol);
        }
        for (int lab : cell.label)
          if (lab >= 0) adj.insert({std::min(i, lab), std::max(i, lab)});
      }
      d.cells2d[static_cast<size_t>(i)] = std::move(cell);
    }
  } else {
    const std::size_t total = grid_.size();
    d.grid = grid_;
    d.labels.assign(total, -1);
    int nthreads = cfg_.threads > 0
                       ? cfg_.threads
                       : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<double>> partial(
        static_cast<size_t>(nthreads), std::vector<double>(static_cast<size_t>(n), 0.0));
    // Along each z-line the scores x.y_i - w_i are affine in z, so labels
    // come from the upper envelope of n lines: sort atoms by z-slope once,
    // build the envelope per line with a monotone stack, then sweep nodes.
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double sa = target_.points[static_cast<size_t>(a)][2];
      double sb = target_.points[static_cast<size_t>(b)][2];
      return sa != sb ? sa < sb : a < b;
    });
    const int R0 = grid_.res[0], R1 = grid_.res[1], R2 = grid_.res[2];
    auto work = [&](int t) {
      std::vector<int> eidx(static_cast<size_t>(n));
      std::vector<double> ez(static_cast<size_t>(n));
      int i0 = R0 * t / nthreads, i1 = R0 * (t + 1) / nthreads;
      for (int i = i0; i < i1; ++i) {
        double x0 = grid_.lo[0] + (i + 0.5) * (grid_.hi[0] - grid_.lo[0]) / R0;
        for (int j = 0; j < R1; ++j) {
          double x1 =
              grid_.lo[1] + (j + 0.5) * (grid_.hi[1] - grid_.lo[1]) / R1;
          int top = -1;  // envelope stack top
          for (int oi : order) {
            const Eigen::VectorXd& y = target_.points[static_cast<size_t>(oi)];
            double c = y[0] * x0 + y[1] * x1 - weights[oi];
            double s = y[2];
            while (top >= 0) {
              const Eigen::VectorXd& yt =
                  target_.points[static_cast<size_t>(eidx[static_cast<size_t>(top)])];
              double ct = yt[0] * x0 + yt[1] * x1 -
                          weights[eidx[static_cast<size_t>(top)]];
              double st = yt[2];
              if (s == st) {  // parallel: keep the higher line
                if (c <= ct) { c = ct; break; }
                --top;
                continue;
              }
              double zx = (ct - c) / (s - st);  // new line wins for z > zx
              if (zx <= ez[static_cast<size_t>(top)]) {
                --top;
                continue;
              }
              ++top;
              eidx[static_cast<size_t>(top)] = oi;
              ez[static_cast<size_t>(top)] = zx;
              break;
            }
            if (top < 0) {
              top = 0;
              eidx[0] = oi;
              ez[0] = -1e300;
            }
          }
          int ptr = 0;
          std::size_t base =
              (static_cast<std::size_t>(i) * R1 + static_cast<std::size_t>(j)) *
              static_cast<std::size_t>(R2);
          for (int k = 0; k < R2; ++k) {
            std::size_t g = base + static_cast<std::size_t>(k);
            if (grid_density_[g] <= 0.0) continue;
            double z =
                grid_.lo[2] + (k + 0.5) * (grid_.hi[2] - grid_.lo[2]) / R2;
            while (ptr < top && ez[static_cast<size_t>(ptr) + 1] <= z) ++ptr;
            int best = eidx[static_cast<size_t>(ptr)];
            d.labels[g] = best;
            partial[static_cast<size_t>(t)][static_cast<size_t>(best)] +=
                grid_density_[g];
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
    for (int t = 0; t < nthreads; ++t)
      for (int i = 0; i < n; ++i)
        d.masses[static_cast<size_t>(i)] += partial[static_cast<size_t>(t)][static_cast<size_t>(i)];
    // face adjacency from label changes along the axes
    auto at = [&](int i, int j, int k) {
      return d.labels[(static_cast<std::size_t>(i) * grid_.res[1] + j) * grid_.res[2] + k];
    };
    for (int i = 0; i < grid_.res[0]; ++i) {
      for (int j = 0; j < grid_.res[1]; ++j) {
        for (int k = 0; k < grid_.res[2]; ++k) {
          std::int32_t a = at(i, j, k);
          if (a < 0) continue;
          if (i + 1 < grid_.res[0] && at(i + 1, j, k) >= 0 && at(i + 1, j, k) != a)
            adj.insert({std::min<int>(a, at(i + 1, j, k)), std::max<int>(a, at(i + 1, j, k))});
          if (j + 1 < grid_.res[1] && at(i, j + 1, k) >= 0 && at(i, j + 1, k) != a)
            adj.insert({std::min<int>(a, at(i, j + 1, k)), std::max<int>(a, at(i, j + 1, k))});
          if (k + 1 < grid_.res[2] && at(i, j, k + 1) >= 0 && at(i, j, k + 1) != a)
            adj.insert({std::min<int>(a, at(i, j, k + 1)), std::max<int>(a, at(i, j, k + 1))});
        }
      }
    }
  }
  d.adjacency.assign(adj.begin(), adj.end());
  return d;
}

double LaguerreBuilder::dual_value(const LaguerreDiagram& d) const {
  const size_t n = target_.size();
  double phi = 0.0;
  if (d.dim == 1) {
    for (size_t i = 0; i < n; ++i) {
      const auto& c = d.cells1d[i];
      if (c[1] <= c[0]) continue;
      double y = target_.points[i][0];
      double w = d.weights[static_cast<Eigen::Index>(i)];
      auto f = [&](double t) {
        Eigen::VectorXd x(1);
        x[0] = t;
        return source_(x);
      };
      phi += y * integrate_interval_moment(f, c[0], c[1], 32) -
             w * d.masses[i];
    }
  } else if (d.dim == 2) {
    for (size_t i = 0; i < n; ++i) {
      const auto& cell = d.cells2d[i];
      if (cell.empty()) continue;
      Eigen::Vector2d y = target_.points[i].head<2>();
      double w = d.weights[static_cast<Eigen::Index>(i)];
      Eigen::Vector2d mom;
      if (source_.is_uniform) {
        mom = source_.uniform_value * polygon_area(cell.v) *
              polygon_centroid(cell.v);
      } else {
        auto f2 = [&](const Eigen::Vector2d& p) {
          Eigen::VectorXd v(2);
          v << p.x(), p.y();
          return source_(v);
        };
        mom = integrate_polygon_moment(f2, cell.v, cfg_.mass_rel_tol);
      }
      phi += y.dot(mom) - w * d.masses[i];
    }
  } else {
    for (std::size_t node = 0; node < grid_density_.size(); ++node) {
      std::int32_t lab = d.labels[node];
      if (lab < 0 || grid_density_[node] <= 0.0) continue;
      phi += grid_density_[node] *
             (target_.points[static_cast<size_t>(lab)].dot(grid_pts_[node]) -
              d.weights[lab]);
    }
  }
  for (size_t i = 0; i < n; ++i)
    phi += d.weights[static_cast<Eigen::Index>(i)] * target_.masses[i];
  return phi;
}

double LaguerreBuilder::mass_resolution() const {
  double m = 0.0;
  for (double g : grid_density_) m = std::max(m, g);
  return m;
}

Eigen::MatrixXd LaguerreBuilder::dual_hessian(const LaguerreDiagram& d) const {
  const int n = static_cast<int>(target_.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  auto add_pair = [&](int i, int j, double c) {
    G(i, j) -= c;
    G(j, i) -= c;
    G(i, i) += c;
    G(j, j) += c;
  };

  if (d.dim == 1) {
    for (auto [i, j] : d.adjacency) {
      double b = (d.weights[i] - d.weights[j]) /
                 (target_.points[static_cast<size_t>(i)][0] -
                  target_.points[static_cast<size_t>(j)][0]);
      Eigen::VectorXd v(1);
      v[0] = b;
      double f = source_(v);
      add_pair(i, j, f / std::abs(target_.points[static_cast<size_t>(i)][0] -
                                  target_.points[static_cast<size_t>(j)][0]));
    }
  } else if (d.dim == 2) {
    for (int i = 0; i < n; ++i) {
      const auto& cell = d.cells2d[static_cast<size_t>(i)];
      if (cell.empty()) continue;
      const size_t m = cell.v.size();
      for (size_t e = 0; e < m; ++e) {
        int j = cell.label[e];
        if (j < 0 || j < i) continue;  // each facet once, from the lower index
        const Eigen::Vector2d& a = cell.v[e];
        const Eigen::Vector2d& b = cell.v[(e + 1) % m];
        double flux;
        if (source_.is_uniform) {
          flux = source_.uniform_value * (b - a).norm();
        } else {
          auto f2 = [&](const Eigen::Vector2d& p) {
            Eigen::VectorXd v(2);
            v << p.x(), p.y();
            return source_(v);
          };
          flux = integrate_segment(f2, a, b, 1e-10);
        }
        double dist = (target_.points[static_cast<size_t>(i)] -
                       target_.points[static_cast<size_t>(j)])
                          .norm();
        add_pair(i, j, flux / dist);
      }
    }
  } else {
    // grid-face estimate of the facet integrals
    double hx = (d.grid.hi[0] - d.grid.lo[0]) / d.grid.res[0];
    double hy = (d.grid.hi[1] - d.grid.lo[1]) / d.grid.res[1];
    double hz = (d.grid.hi[2] - d.grid.lo[2]) / d.grid.res[2];
    double cellvol = hx * hy * hz;
    auto at = [&](int i, int j, int k) {
      return d.labels[(static_cast<std::size_t>(i) * d.grid.res[1] + j) * d.grid.res[2] + k];
    };
    auto rho = [&](int i, int j, int k) {
      return grid_density_[(static_cast<std::size_t>(i) * d.grid.res[1] + j) * d.grid.res[2] + k];
    };
    auto face = [&](int i, int j, int k, int i2, int j2, int k2, double area) {
      std::int32_t a = at(i, j, k), b2 = at(i2, j2, k2);
      if (a < 0 || b2 < 0 || a == b2) return;
      double f = 0.5 * (rho(i, j, k) + rho(i2, j2, k2)) / cellvol;  // density
      double dist = (target_.points[static_cast<size_t>(a)] -
                     target_.points[static_cast<size_t>(b2)])
                        .norm();
      add_pair(a, b2, f * area / dist);
    };
    for (int i = 0; i < d.grid.res[0]; ++i) {
      for (int j = 0; j < d.grid.res[1]; ++j) {
        for (int k = 0; k < d.grid.res[2]; ++k) {
          if (i + 1 < d.grid.res[0]) face(i, j, k, i + 1, j, k, hy * hz);
          if (j + 1 < d.grid.res[1]) face(i, j, k, i, j + 1, k, hx * hz);
          if (k + 1 < d.grid.res[2]) face(i, j, k, i, j, k + 1, hx * hy);
        }
      }
    }
  }
  return G;
}

LaguerreDiagram laguerre_diagram(const SourceDensity& source,
                                 const DiscreteMeasure& target,
                                 const Eigen::VectorXd& weights,
                                 const LaguerreConfig& cfg) {
  return LaguerreBuilder(source, target, cfg).build(weights);
}

}  // namespace sdot
