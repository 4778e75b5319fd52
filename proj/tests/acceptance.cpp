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
//
// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Each check carries its own tolerance and runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sdot/counterexample.hpp"
#include "sdot/diagnostics.hpp"
#include "sdot/ma_measure.hpp"
#include "sdot/quantize.hpp"
#include "sdot/rng.hpp"
#include "sdot/solver.hpp"
#include "sdot/verify.hpp"

using namespace sdot;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("criterion %2d: %s  %s (%s)\n", idx, pass ? "PASS" : "FAIL",
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Eigen::VectorXd fd_gradient(const CounterexampleSpec& s,
                            const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(s.n);
  for (int i = 0; i < s.n; ++i) {
    Eigen::VectorXd p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (ce_evaluate(s, p).value - ce_evaluate(s, m).value) / (2 * h);
  }
  return g;
}

double fd_hessian_det(const CounterexampleSpec& s, const Eigen::VectorXd& x,
                      double h) {
  Eigen::MatrixXd H(s.n, s.n);
  double u0 = ce_evaluate(s, x).value;
  for (int i = 0; i < s.n; ++i)
    for (int j = i; j < s.n; ++j) {
      if (i == j) {
        Eigen::VectorXd p = x, m = x;
        p[i] += h;
        m[i] -= h;
        H(i, i) =
            (ce_evaluate(s, p).value - 2 * u0 + ce_evaluate(s, m).value) /
            (h * h);
      } else {
        Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
        pp[i] += h, pp[j] += h;
        pm[i] += h, pm[j] -= h;
        mp[i] -= h, mp[j] += h;
        mm[i] -= h, mm[j] -= h;
        H(i, j) = H(j, i) =
            (ce_evaluate(s, pp).value - ce_evaluate(s, pm).value -
             ce_evaluate(s, mp).value + ce_evaluate(s, mm).value) /
            (4 * h * h);
      }
    }
  return H.determinant();
}

std::vector<double> theta_grid(double lo, double hi) {
  std::vector<double> th;
  for (double t = lo; t <= hi * (1 + 1e-12); t *= 2.0) th.push_back(t);
  return th;
}

// Shared solve for criteria 1, 2, 8 and 9.
struct SolvedSquare {
  SourceDensity source = make_uniform_density(
      Domain::box(vec2(0, 0), vec2(1, 1)));
  DiscreteMeasure target;
  SolveResult res;
};

SolvedSquare g_sq;

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    g_sq.target = quantize_target(make_gaussian_density(2, 1.0), 64, 4.0, 1,
                                  QuantizeMode::kGrid);
    g_sq.res = solve_weights(g_sq.source, g_sq.target, 1e-10);
    std::vector<Domain> probes = {Domain::box(vec2(2, 2), vec2(3, 3)),
                                  Domain::box(vec2(-5, 0), vec2(-4, 1))};
    auto rep = verify_alexandrov(g_sq.res.diagram, g_sq.source, g_sq.target,
                                 probes, 1e-9);
    double dt = seconds_since(t0);
    bool mass_ok = rep.max_cell_mass_error <= 1e-9;
    bool probe_ok = true;
    for (const auto& p : rep.probes)
      probe_ok = probe_ok && p.disjoint_from_source && p.ma_mass == 0.0;
    ok = mass_ok && probe_ok && rep.pass && dt <= 10.0;
    detail = "max cell mass error " + fmt(rep.max_cell_mass_error) +
             ", disjoint probe mass 0, " + fmt(dt) + " s";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(1, ok, "cell masses solve the discrete Monge-Ampere identity",
         detail);
}

void criterion_2() {
  bool ok = true;
  std::string detail;
  try {
    const std::size_t n = 1000000;
    auto emp = pushforward_empirical_masses(g_sq.res.diagram, g_sq.source,
                                            g_sq.target, n, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < emp.size(); ++i) {
      double m = g_sq.target.masses[i];
      double sigma = std::sqrt(m * (1.0 - m) / static_cast<double>(n));
      double z = std::abs(emp[i] - m) / std::max(sigma, 1e-300);
      worst = std::max(worst, z);
    }
    ok = worst <= 3.0;
    detail = "worst per-cell deviation " + fmt(worst) + " sigma";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(2, ok, "sampled pushforward matches the target within 3 sigma",
         detail);
}

void criterion_3() {
  bool ok = true;
  std::string detail;
  try {
    Eigen::VectorXd lo(1), hi(1);
    lo << 0.0;
    hi << 1.0;
    auto src = make_uniform_density(Domain::box(lo, hi));
    int excluded_total = 0;
    int worst_mismatches = 0;
    for (int N : {2, 8, 32}) {
      auto t = quantize_target(make_gaussian_density(1, 1.0), N, 4.0, 1,
                               QuantizeMode::kGrid);
      auto res = solve_weights(src, t, 1e-12);
      // quantile oracle: sort atoms, boundaries at cumulative masses
      std::vector<int> order(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return t.points[a][0] < t.points[b][0];
      });
      std::vector<double> bounds;  // interior boundaries
      double cum = 0.0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        cum += t.masses[order[k]];
        bounds.push_back(cum);
      }
      const double half_width = 1.0 / N;  // excluded strip width 2/N
      for (int k = 0; k < 10000; ++k) {
        double x = (k + 0.5) / 10000.0;
        bool near_boundary = false;
        int oracle_cell = 0;
        double c2 = 0.0;
        for (std::size_t j = 0; j < order.size(); ++j) {
          c2 += t.masses[order[j]];
          if (x < c2 || j + 1 == order.size()) {
            oracle_cell = order[j];
            break;
          }
        }
        for (double b : bounds)
          near_boundary = near_boundary || std::abs(x - b) <= half_width;
        if (near_boundary) {
          ++excluded_total;
          continue;
        }
        Eigen::VectorXd xx(1);
        xx << x;
        auto got = transport_map(res.diagram, xx);
        if (got.first != oracle_cell) ++worst_mismatches;
      }
    }
    ok = worst_mismatches == 0;
    detail = "interior deviations " + std::to_string(worst_mismatches) +
             ", excluded points " + std::to_string(excluded_total);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(3, ok, "1d maps agree with cdf inversion away from cell boundaries",
         detail);
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    CounterexampleSpec s(3, 1.0 / 6.0);
    double grad_err = 0.0, det_err = 0.0;
    Rng rng(44);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd x = vec3(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                               rng.uniform(-0.8, 0.8));
      if (x.head(2).norm() < 0.2) continue;
      auto e = ce_evaluate(s, x);
      grad_err = std::max(grad_err, (e.gradient - fd_gradient(s, x, 1e-6))
                                            .norm() /
                                        std::max(1.0, e.gradient.norm()));
      det_err = std::max(det_err,
                         std::abs(e.hessian_det - fd_hessian_det(s, x, 1e-4)) /
                             std::abs(e.hessian_det));
    }
    double det0 = ce_evaluate(s, vec3(1.0, 0.0, 0.0)).hessian_det;
    double det0_err = std::abs(det0 - 16.0 / 81.0);
    double rt_err = 0.0;
    int done = 0;
    while (done < 1000) {
      Eigen::VectorXd x = vec3(rng.uniform(-2, 2), rng.uniform(-2, 2),
                               rng.uniform(-0.9, 0.9));
      if (x.head(2).norm() < 1e-3) continue;
      auto back = ce_invert_gradient(s, ce_evaluate(s, x).gradient);
      if (!back) {
        rt_err = 1e300;
        break;
      }
      rt_err = std::max(rt_err, (*back - x).norm() / std::max(1.0, x.norm()));
      ++done;
    }
    bool nopre = !ce_invert_gradient(s, vec3(0, 0, 1)).has_value();
    double dt = seconds_since(t0);
    ok = grad_err <= 1e-6 && det_err <= 1e-4 && det0_err <= 1e-12 &&
         rt_err <= 1e-8 && nopre && dt <= 5.0;
    detail = "grad " + fmt(grad_err) + ", det " + fmt(det_err) + ", det0 " +
             fmt(det0_err) + ", roundtrip " + fmt(rt_err) + ", " + fmt(dt) +
             " s";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, ok, "radially degenerate potential certificate", detail);
}

void criterion_5() {
  bool ok = true;
  std::string detail;
  try {
    CounterexampleSpec s(3, 1.0 / 6.0);
    std::vector<Eigen::VectorXd> approach;
    for (int k = 1; k <= 6; ++k)
      approach.push_back(vec3(1.0, 0.0, 1.0 - std::pow(10.0, -k)));
    auto rows = ce_degeneracy_scan(s, 10.0, approach);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      decreasing = decreasing && rows[i].log_F < rows[i - 1].log_F;
    bool collapse = rows.back().log_F - rows.front().log_F <= std::log(1e-3);
    double mn = 1e300;
    for (double r = 0.5; r <= 2.0 + 1e-12; r += 0.05)
      for (double t = -0.9; t <= 0.9 + 1e-12; t += 0.05)
        mn = std::min(mn, ce_induced_density(s, vec3(r, 0, t)));
    ok = decreasing && collapse && mn > 0.0;
    detail = "log F drop " + fmt(rows.back().log_F - rows.front().log_F) +
             ", interior min " + fmt(mn);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, ok, "induced density collapses at the slab boundary only", detail);
}

void criterion_6() {
  bool ok = true;
  std::string detail;
  auto thetas = theta_grid(1e-3, 1e-1);
  struct Case {
    double lambda, expected;
  };
  for (Case c : {Case{2.0, 4.0}, Case{3.0, 2.5}, Case{4.0, 2.0}}) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto rep = wedge_volume_scaling(3, c.lambda, 1.0, thetas, 10000000, 6);
      double dt = seconds_since(t0);
      bool good = std::abs(rep.fitted_exponent - c.expected) <= 0.15 &&
                  dt <= 60.0;
      ok = ok && good;
      detail += (detail.empty() ? "" : "; ") + std::string("lambda ") +
                fmt(c.lambda) + " fit " + fmt(rep.fitted_exponent) + " vs " +
                fmt(c.expected) + " in " + fmt(dt) + " s";
    } catch (const std::exception& e) {
      ok = false;
      detail += e.what();
    }
  }
  report(6, ok, "boundary wedge volumes scale with the predicted exponent",
         detail);
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  try {
    auto thetas = theta_grid(1e-2, 0.64);
    auto full = cone_volume_scaling(Domain::full_space(3), thetas, 1000000, 7);
    auto ball = cone_volume_scaling(Domain::ball(vec3(0.5, 0, 0), 0.5), thetas,
                                    1000000, 7);
    ok = std::abs(full.fitted_exponent - 2.0) <= 0.1 &&
         ball.min_normalized_volume > 0.0 && ball.verdict == "LOWER_BOUND_OK";
    detail = "full-space fit " + fmt(full.fitted_exponent) +
             ", ball min volume/theta^2 " + fmt(ball.min_normalized_volume);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, ok, "slope cones capture a theta^(n-1) volume fraction", detail);
}

void criterion_8() {
  bool ok = true;
  std::string detail;
  try {
    const double R = 4.0;
    auto u = g_sq.res.diagram.potential();
    double L = u.lipschitz();
    bool atoms_in = true;
    for (const auto& y : g_sq.target.points) atoms_in = atoms_in && y.norm() <= R;
    ok = atoms_in && L <= R;
    detail = "lipschitz " + fmt(L) + " <= R " + fmt(R);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, ok, "solved potential is R-Lipschitz", detail);
}

void criterion_9() {
  bool ok = true;
  std::string detail;
  try {
    auto u = g_sq.res.diagram.potential().canonical();
    auto star = legendre_conjugate(u);
    auto back = legendre_conjugate(star);
    Rng rng(9);
    double inv_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      Eigen::VectorXd x = vec2(rng.uniform(0, 1), rng.uniform(0, 1));
      inv_err = std::max(inv_err, std::abs(back.value(x) - u.value(x)));
    }
    double fy_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      Eigen::VectorXd x = vec2(rng.uniform(0, 1), rng.uniform(0, 1));
      auto [idx, y] = transport_map(g_sq.res.diagram, x);
      auto sv = star.value(y);
      if (!sv) {
        fy_err = 1e300;
        break;
      }
      fy_err = std::max(fy_err, std::abs(u.value(x) + *sv - x.dot(y)));
    }
    ok = inv_err <= 1e-10 && fy_err <= 1e-10;
    detail = "double conjugation " + fmt(inv_err) + ", fenchel-young defect " +
             fmt(fy_err);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(9, ok, "conjugation is an involution with tight duality on the map",
         detail);
}

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    std::vector<int> levels = {16, 64, 256, 1024};
    auto g2 = make_gaussian_density(2, 1.0);
    std::vector<Eigen::VectorXd> origin = {Eigen::VectorXd::Zero(2)};
    auto regular = strict_convexity_probe(g2, g2, levels, origin, 4.0, 1,
                                          QuantizeMode::kLloyd, {}, 1e-9);
    auto u3 = make_uniform_density(Domain::box(
        Eigen::VectorXd::Constant(3, -2.0), Eigen::VectorXd::Constant(3, 2.0)));
    auto ce = make_counterexample_density(3, 1.0 / 6.0, 2.0);
    std::vector<Eigen::VectorXd> poles = {vec3(0, 0, 1), vec3(0, 0, -1)};
    auto degen = strict_convexity_probe(u3, ce, levels, poles, 2.0, 1,
                                        QuantizeMode::kLloyd, {}, 1e-6);
    double dt = seconds_since(t0);
    ok = regular.flag == "REGULAR" && degen.flag == "DEGENERATE" && dt <= 600.0;
    detail = "gaussian " + regular.flag + ", slab potential " + degen.flag +
             ", " + fmt(dt) + " s";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(10, ok, "refinement probe separates regular and degenerate maps",
         detail);
}

void criterion_11() {
  bool ok = true;
  std::string detail;
  try {
    Rng rng(11);
    int zero_mass_cases = 0, vertex_cases = 0, violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
      int dim = 1 + static_cast<int>(rng.uniform() * 2.0);
      int npieces = 4 + static_cast<int>(rng.uniform() * 5.0);
      std::vector<AffinePiece> pieces(npieces);
      for (auto& p : pieces) {
        p.slope = Eigen::VectorXd(dim);
        for (int i = 0; i < dim; ++i) p.slope[i] = rng.uniform(-1, 1);
        p.intercept = rng.uniform(-0.5, 0.5);
      }
      PiecewiseAffinePotential u(dim, pieces);
      // strictly interior section slope: positive mixture of all slopes
      Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
      double total = 0.0;
      for (const auto& p : pieces) {
        double w = 0.2 + rng.uniform();
        a += w * p.slope;
        total += w;
      }
      a /= total;
      // intercept chosen around the conjugate value so sections vary between
      // empty, shallow and vertex-swallowing
      std::vector<HullPoint> dual;
      for (const auto& p : pieces) dual.push_back({p.slope, -p.intercept});
      auto env = lower_envelope_value(dual, a);
      if (!env) continue;
      double c = -*env + rng.uniform(-0.1, 0.3);
      SectionReport rep;
      try {
        rep = section_min_principle_check(u, a, c);
      } catch (const std::invalid_argument&) {
        continue;  // degenerate hull made the section unbounded
      }
      if (rep.ma_mass_of_section <= 1e-12) {
        ++zero_mass_cases;
        if (rep.interior_defect > 1e-10) ++violations;
      }
      // strictly interior positive-mass vertex forces a positive defect
      bool has_interior_vertex = false;
      for (const auto& v : enumerate_complex_vertices(u)) {
        double slack = a.dot(v.x) + c - u.value(v.x);
        if (v.subdiff_measure > 1e-12 && slack > 1e-9)
          has_interior_vertex = true;
      }
      if (has_interior_vertex) {
        ++vertex_cases;
        if (!(rep.interior_defect > 0.0)) ++violations;
      }
    }
    ok = violations == 0 && zero_mass_cases > 0 && vertex_cases > 0;
    detail = std::to_string(zero_mass_cases) + " zero-mass sections, " +
             std::to_string(vertex_cases) + " vertex sections, " +
             std::to_string(violations) + " violations";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(11, ok, "section minimum principle on randomized potentials", detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", g_failures);
  return 1;
}
