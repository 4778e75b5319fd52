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

#include "sdot/counterexample.hpp"

#include <cmath>
#include <stdexcept>

namespace sdot {

namespace {

double h_fn(double a, double t) { return std::pow(1.0 - t * t, -a); }

double h_prime(double a, double t) {
  return 2.0 * a * t * std::pow(1.0 - t * t, -a - 1.0);
}

double h_second(double a, double t) {
  return (2.0 * a + 2.0 * a * t * t + 4.0 * a * a * t * t) *
         std::pow(1.0 - t * t, -a - 2.0);
}

double det_from_h(const CounterexampleSpec& s, double t) {
  double h = h_fn(s.alpha, t);
  double hp = h_prime(s.alpha, t);
  double hpp = h_second(s.alpha, t);
  return std::pow(s.gamma, s.n - 1) * std::pow(h, s.n - 2) *
         ((s.gamma - 1.0) * h * hpp - s.gamma * hp * hp);
}

// Right hand side of the x_n-recovery relation as a function of t in (0,1).
double ratio_fn(const CounterexampleSpec& s, double t) {
  double e = s.gamma / (s.gamma - 1.0);
  return std::pow(s.gamma, e) *
         std::pow(1.0 - t * t, (s.gamma - s.alpha - 1.0) / (s.gamma - 1.0)) /
         (2.0 * s.alpha * t);
}

}  // namespace

CounterexampleSpec::CounterexampleSpec(int n_, double alpha_) {
  if (n_ < 3) throw std::invalid_argument("CounterexampleSpec: need n >= 3");
  n = n_;
  gamma = 2.0 - 2.0 / n_;
  if (!(alpha_ > 0.0 && alpha_ < gamma - 1.0))
    throw std::invalid_argument("CounterexampleSpec: need 0 < alpha < gamma - 1");
  alpha = alpha_;
}

CounterexampleSpec CounterexampleSpec::unchecked(int n_, double alpha_) {
  CounterexampleSpec s;
  s.n = n_;
  s.gamma = 2.0 - 2.0 / n_;
  s.alpha = alpha_;
  return s;
}

double CounterexampleSpec::admissible_alpha_midpoint(int n) {
  return 0.5 * (1.0 - 2.0 / n);
}

CeEval ce_evaluate(const CounterexampleSpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.n)
    throw std::invalid_argument("ce_evaluate: dimension mismatch");
  double t = x[spec.n - 1];
  if (std::abs(t) >= 1.0) throw std::domain_error("ce_evaluate: |x_n| >= 1");
  Eigen::VectorXd xp = x.head(spec.n - 1);
  double r = xp.norm();
  double h = h_fn(spec.alpha, t);

  CeEval out;
  out.value = std::pow(r, spec.gamma) * h;
  out.gradient = Eigen::VectorXd::Zero(spec.n);
  if (r > 0.0) {
    // gamma - 2 < 0, so the radial factor is evaluated in the r^{gamma-1}
    // times unit-direction form.
    out.gradient.head(spec.n - 1) =
        spec.gamma * std::pow(r, spec.gamma - 1.0) * h * (xp / r);
    out.gradient[spec.n - 1] = std::pow(r, spec.gamma) * h_prime(spec.alpha, t);
  }
  out.hessian_det = det_from_h(spec, t);
  return out;
}

ConvexityCertificate ce_convexity_certificate(const CounterexampleSpec& spec,
                                              int grid_resolution) {
  ConvexityCertificate cert;
  cert.min_inequality_margin = 1e300;
  for (int i = 0; i <= grid_resolution; ++i) {
    double t = -1.0 + 2.0 * i / grid_resolution;
    t = std::clamp(t, -1.0 + 1e-9, 1.0 - 1e-9);
    double margin = (spec.gamma - 1.0) * (1.0 + t * t) - 2.0 * spec.alpha * t * t;
    cert.min_inequality_margin = std::min(cert.min_inequality_margin, margin);
  }
  cert.positive_det = cert.min_inequality_margin > 0.0;

  // Finite-difference Hessian PSD scan over a coarse sample grid off the axis.
  cert.min_eigenvalue_scan = 1e300;
  const double step = 1e-4;
  for (double r : {0.5, 1.0, 2.0}) {
    for (int i = 1; i < 8; ++i) {
      double t = -0.9 + 1.8 * i / 8.0;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(spec.n);
      x[0] = r;
      x[spec.n - 1] = t;
      Eigen::MatrixXd H(spec.n, spec.n);
      for (int a = 0; a < spec.n; ++a) {
        for (int b = 0; b < spec.n; ++b) {
          Eigen::VectorXd xa = x, xb = x, xab = x, x0 = x;
          xa[a] += step;
          xb[b] += step;
          xab[a] += step;
          xab[b] += step;
          double f = [&](const Eigen::VectorXd& z) {
            return ce_evaluate(spec, z).value;
          }(x0);
          H(a, b) = (ce_evaluate(spec, xab).value - ce_evaluate(spec, xa).value -
                     ce_evaluate(spec, xb).value + f) /
                    (step * step);
        }
      }
      Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
      cert.min_eigenvalue_scan =
          std::min(cert.min_eigenvalue_scan, es.eigenvalues().minCoeff());
    }
  }
  return cert;
}

std::optional<Eigen::VectorXd> ce_invert_gradient(const CounterexampleSpec& spec,
                                                  const Eigen::VectorXd& y) {
  if (y.size() != spec.n)
    throw std::invalid_argument("ce_invert_gradient: dimension mismatch");
  Eigen::VectorXd yp = y.head(spec.n - 1);
  double yn = y[spec.n - 1];
  double ypn = yp.norm();

  if (ypn == 0.0) {
    if (yn != 0.0) return std::nullopt;  // image misses {0} x (R \ {0})
    return Eigen::VectorXd::Zero(spec.n);
  }

  double xn = 0.0;
  if (yn != 0.0) {
    double target = std::pow(ypn, spec.gamma / (spec.gamma - 1.0)) / std::abs(yn);
    // Scan a dyadically refined partition of (0,1) for a sign change of
    // ratio_fn - target, then bisect the first bracketing interval.
    int segments = 1024;
    double lo = -1.0, hi = -1.0;
    while (segments <= (1 << 20)) {
      double prev_t = 1.0 / (2.0 * segments);
      double prev_v = ratio_fn(spec, prev_t) - target;
      for (int i = 1; i <= segments; ++i) {
        double t = std::min(1.0 - 1e-12, static_cast<double>(i) / segments);
        double v = ratio_fn(spec, t) - target;
        if (prev_v == 0.0 || (prev_v > 0.0) != (v > 0.0)) {
          lo = prev_t;
          hi = t;
          break;
        }
        prev_t = t;
        prev_v = v;
      }
      if (lo >= 0.0) break;
      segments *= 4;
    }
    if (lo < 0.0)
      throw std::runtime_error("ce_invert_gradient: root bracket failure");
    double flo = ratio_fn(spec, lo) - target;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = ratio_fn(spec, mid) - target;
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    xn = (yn > 0.0 ? 1.0 : -1.0) * 0.5 * (lo + hi);
  }

  double r = std::pow(ypn * std::pow(1.0 - xn * xn, spec.alpha) / spec.gamma,
                      1.0 / (spec.gamma - 1.0));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(spec.n);
  x.head(spec.n - 1) = r * (yp / ypn);
  x[spec.n - 1] = xn;
  return x;
}

double ce_induced_density(const CounterexampleSpec& spec,
                          const Eigen::VectorXd& x) {
  CeEval e = ce_evaluate(spec, x);
  double cn = std::pow(2.0 * M_PI, -0.5 * spec.n);
  return e.hessian_det * cn * std::exp(-0.5 * e.gradient.squaredNorm());
}

double ce_induced_density_log(const CounterexampleSpec& spec,
                              const Eigen::VectorXd& x) {
  CeEval e = ce_evaluate(spec, x);
  if (e.hessian_det <= 0.0)
    throw std::domain_error("ce_induced_density_log: nonpositive determinant");
  return std::log(e.hessian_det) - 0.5 * spec.n * std::log(2.0 * M_PI) -
         0.5 * e.gradient.squaredNorm();
}

std::vector<DegeneracyRow> ce_degeneracy_scan(
    const CounterexampleSpec& spec, double radius,
    const std::vector<Eigen::VectorXd>& approach_points) {
  std::vector<DegeneracyRow> rows;
  int k = 1;
  for (const auto& x : approach_points) {
    if (std::abs(x[spec.n - 1]) >= 1.0)
      throw std::domain_error("ce_degeneracy_scan: sequence left X");
    if (x.norm() > radius)
      throw std::domain_error("ce_degeneracy_scan: sequence left B_R");
    CeEval e = ce_evaluate(spec, x);
    rows.push_back({k++, x, ce_induced_density(spec, x),
                    ce_induced_density_log(spec, x), e.gradient.norm()});
  }
  return rows;
}

}  // namespace sdot
