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

#include "sdot/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdot/rng.hpp"

namespace sdot {

void DiscreteMeasure::validate() const {
  if (points.empty()) throw std::invalid_argument("DiscreteMeasure: empty");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0)) throw std::invalid_argument("DiscreteMeasure: nonpositive mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteMeasure: masses must sum to 1");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).norm() < 1e-12)
        throw std::invalid_argument("DiscreteMeasure: duplicate points");
}

std::vector<int> grid_factorization(int N, int dim) {
  std::vector<int> factors;
  int rem = N;
  for (int k = dim; k >= 1; --k) {
    if (k == 1) {
      factors.push_back(rem);
      break;
    }
    int target = static_cast<int>(std::llround(std::pow(rem, 1.0 / k)));
    int best = 1;
    for (int d = 1; d <= rem; ++d) {
      if (rem % d != 0) continue;
      if (std::abs(d - target) < std::abs(best - target)) best = d;
    }
    factors.push_back(best);
    rem /= best;
  }
  std::sort(factors.begin(), factors.end(), std::greater<int>());
  return factors;
}

namespace {

DiscreteMeasure finalize(std::vector<Eigen::VectorXd> pts,
                         std::vector<double> masses, double deficit) {
  double total = 0.0;
  for (double m : masses) total += m;
  if (total <= 0.0)
    throw std::runtime_error("quantize_target: zero mass in truncated region");
  DiscreteMeasure out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (masses[i] <= 1e-300) continue;
    out.points.push_back(pts[i]);
    out.masses.push_back(masses[i] / total);
  }
  // Fix the tiny renormalization residue onto the largest atom so the checked
  // 1e-12 sum invariant holds exactly.
  double sum = 0.0;
  size_t argmax = 0;
  for (size_t i = 0; i < out.masses.size(); ++i) {
    sum += out.masses[i];
    if (out.masses[i] > out.masses[argmax]) argmax = i;
  }
  out.masses[argmax] += 1.0 - sum;
  out.truncated_mass_deficit = deficit;
  out.validate();
  return out;
}

}  // namespace

DiscreteMeasure quantize_target(const SourceDensity& g, int N,
                                double truncation_radius, std::uint64_t seed,
                                QuantizeMode mode) {
  if (N < 1) throw std::invalid_argument("quantize_target: N >= 1 required");
  const int dim = g.box_lo.size() ? static_cast<int>(g.box_lo.size()) : g.domain.dim();

  Eigen::VectorXd lo = g.box_lo.cwiseMax(Eigen::VectorXd::Constant(dim, -truncation_radius));
  Eigen::VectorXd hi = g.box_hi.cwiseMin(Eigen::VectorXd::Constant(dim, truncation_radius));
  if (((hi - lo).array() <= 0.0).any())
    throw std::runtime_error("quantize_target: zero mass in truncated region");

  // Truncation is to the ball of the given radius, so every centroid (a mean
  // of in-ball points) stays inside it; the bounding box is only clipped.
  const double r2 = truncation_radius * truncation_radius;
  auto f = [&](const Eigen::VectorXd& x) {
    return x.squaredNorm() <= r2 ? g(x) : 0.0;
  };

  if (mode == QuantizeMode::kGrid) {
    auto factors = grid_factorization(N, dim);
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> masses;
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    for (;;) {
      Eigen::VectorXd clo(dim), chi(dim);
      for (int k = 0; k < dim; ++k) {
        int nk = factors[static_cast<size_t>(k)];
        clo[k] = lo[k] + (hi[k] - lo[k]) * idx[static_cast<size_t>(k)] / nk;
        chi[k] = lo[k] + (hi[k] - lo[k]) * (idx[static_cast<size_t>(k)] + 1) / nk;
      }
      double m, mass;
      Eigen::VectorXd centroid(dim);
      if (dim == 1) {
        auto f1 = [&](double x) {
          Eigen::VectorXd v(1);
          v[0] = x;
          return f(v);
        };
        mass = integrate_interval(f1, clo[0], chi[0], 32);
        centroid[0] = mass > 0.0
                          ? integrate_interval_moment(f1, clo[0], chi[0], 32) / mass
                          : 0.5 * (clo[0] + chi[0]);
      } else {
        mass = integrate_cell(f, clo, chi);
        centroid = mass > 0.0
                       ? Eigen::VectorXd(integrate_cell_moment(f, clo, chi) / mass)
                       : Eigen::VectorXd(0.5 * (clo + chi));
      }
      m = mass;
      if (m > 1e-300) {
        pts.push_back(centroid);
        masses.push_back(m);
      }
      int k = 0;
      while (k < dim && ++idx[static_cast<size_t>(k)] == factors[static_cast<size_t>(k)])
        idx[static_cast<size_t>(k++)] = 0;
      if (k == dim) break;
    }
    double found = 0.0;
    for (double m : masses) found += m;
    return finalize(std::move(pts), std::move(masses),
                    std::max(0.0, 1.0 - found));
  }

  // Lloyd mode: k-means over a seeded rejection sample of G.
  Rng rng(seed);
  const int M = std::max(50 * N, 20000);
  // crude density bound over a coarse grid, inflated
  double fmax = 0.0;
  {
    const int probes = 4096;
    Rng probe_rng(seed ^ 0x5bd1e995u);
    for (int i = 0; i < probes; ++i)
      fmax = std::max(fmax, f(probe_rng.uniform_in_box(lo, hi)));
    fmax *= 1.5;
  }
  if (fmax <= 0.0)
    throw std::runtime_error("quantize_target: zero mass in truncated region");
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<size_t>(M));
  std::size_t guard = 0;
  while (static_cast<int>(samples.size()) < M) {
    if (++guard > static_cast<std::size_t>(M) * 10000)
      throw std::runtime_error("quantize_target: rejection sampling failed");
    Eigen::VectorXd x = rng.uniform_in_box(lo, hi);
    if (rng.uniform() * fmax <= f(x)) samples.push_back(std::move(x));
  }
  std::vector<Eigen::VectorXd> centers;
  for (int i = 0; i < N; ++i)
    centers.push_back(samples[static_cast<size_t>(i) * samples.size() / static_cast<size_t>(N)]);
  std::vector<int> assign(samples.size(), 0);
  for (int iter = 0; iter < 60; ++iter) {
    bool changed = false;
    for (size_t s = 0; s < samples.size(); ++s) {
      int best = 0;
      double bd = 1e300;
      for (int i = 0; i < N; ++i) {
        double d = (samples[s] - centers[static_cast<size_t>(i)]).squaredNorm();
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      if (assign[s] != best) {
        assign[s] = best;
        changed = true;
      }
    }
    std::vector<Eigen::VectorXd> sums(static_cast<size_t>(N),
                                      Eigen::VectorXd::Zero(dim));
    std::vector<int> counts(static_cast<size_t>(N), 0);
    for (size_t s = 0; s < samples.size(); ++s) {
      sums[static_cast<size_t>(assign[s])] += samples[s];
      ++counts[static_cast<size_t>(assign[s])];
    }
    for (int i = 0; i < N; ++i)
      if (counts[static_cast<size_t>(i)] > 0)
        centers[static_cast<size_t>(i)] = sums[static_cast<size_t>(i)] / counts[static_cast<size_t>(i)];
    if (!changed) break;
  }
  std::vector<int> counts(static_cast<size_t>(N), 0);
  for (int a : assign) ++counts[static_cast<size_t>(a)];
  std::vector<double> masses;
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < N; ++i) {
    if (counts[static_cast<size_t>(i)] == 0) continue;
    pts.push_back(centers[static_cast<size_t>(i)]);
    masses.push_back(static_cast<double>(counts[static_cast<size_t>(i)]));
  }
  return finalize(std::move(pts), std::move(masses), g.mass_deficit);
}

}  // namespace sdot
