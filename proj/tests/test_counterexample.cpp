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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sdot/counterexample.hpp"
#include "sdot/ma_measure.hpp"
#include "sdot/rng.hpp"

using namespace sdot;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

// Finite-difference oracles built directly on the scalar value function.
Eigen::VectorXd fd_gradient(const CounterexampleSpec& s,
                            const Eigen::VectorXd& x, double h = 1e-6) {
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
                      double h = 1e-4) {
  Eigen::MatrixXd H(s.n, s.n);
  double u0 = ce_evaluate(s, x).value;
  for (int i = 0; i < s.n; ++i) {
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
  }
  return H.determinant();
}

}  // namespace

TEST_CASE("potential evaluation") {
  CounterexampleSpec s(3, 1.0 / 6.0);

  SUBCASE("parameter guards") {
    CHECK_THROWS(CounterexampleSpec(2, 0.1));
    CHECK_THROWS(CounterexampleSpec(3, 0.0));
    CHECK_THROWS(CounterexampleSpec(3, 0.34));  // above alpha < gamma - 1
    CHECK_NOTHROW(CounterexampleSpec(3, 1.0 / 3.0 - 0.01));
    CHECK_NOTHROW(CounterexampleSpec(4, 0.2));
    CHECK(CounterexampleSpec::admissible_alpha_midpoint(3) ==
          doctest::Approx(1.0 / 6.0));
  }

  SUBCASE("closed form value and domain guard") {
    auto e = ce_evaluate(s, vec3(0.3, 0.4, 0.5));
    double want = std::pow(0.5, s.gamma) * std::pow(1.0 - 0.25, -s.alpha);
    CHECK(e.value == doctest::Approx(want).epsilon(1e-13));
    CHECK_THROWS_AS(ce_evaluate(s, vec3(0.1, 0.1, 1.0)), std::domain_error);
  }

  SUBCASE("vanishes on the degenerate axis segment") {
    for (double t : {-0.9, -0.3, 0.0, 0.6}) {
      CHECK(ce_evaluate(s, vec3(0, 0, t)).value == 0.0);
    }
  }

  SUBCASE("rotational symmetry in the tangential block") {
    auto a = ce_evaluate(s, vec3(0.5, 0.0, 0.2));
    auto b = ce_evaluate(s, vec3(0.3, 0.4, 0.2));
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
    CHECK(a.hessian_det == doctest::Approx(b.hessian_det).epsilon(1e-12));
  }

  SUBCASE("gradient matches central differences") {
    for (auto x : {vec3(0.7, -0.4, 0.3), vec3(0.2, 0.9, -0.6),
                   vec3(-1.1, 0.5, 0.0)}) {
      auto e = ce_evaluate(s, x);
      CHECK((e.gradient - fd_gradient(s, x)).norm() <= 1e-6);
    }
  }

  SUBCASE("hessian determinant matches finite differences") {
    for (auto x : {vec3(0.7, -0.4, 0.3), vec3(0.5, 0.5, -0.2)}) {
      CHECK(std::abs(ce_evaluate(s, x).hessian_det - fd_hessian_det(s, x)) <=
            1e-4);
    }
  }

  SUBCASE("determinant on the midplane is exactly 16/81") {
    for (double r : {0.3, 1.0, 2.5}) {
      CHECK(std::abs(ce_evaluate(s, vec3(r, 0, 0)).hessian_det - 16.0 / 81.0) <=
            1e-12);
    }
  }

  SUBCASE("determinant independent of the tangential radius") {
    double ref = ce_evaluate(s, vec3(0.2, 0, 0.4)).hessian_det;
    for (double r : {0.05, 0.7, 3.0}) {
      double d = ce_evaluate(s, vec3(r, 0, 0.4)).hessian_det;
      CHECK(std::abs(d - ref) <= 1e-10 * std::abs(ref));
    }
  }
}

TEST_CASE("convexity certificate") {
  SUBCASE("admissible alpha certifies") {
    auto c = ce_convexity_certificate(CounterexampleSpec(3, 1.0 / 6.0), 256);
    CHECK(c.positive_det);
    CHECK(c.min_inequality_margin > 0.0);
    CHECK(c.min_eigenvalue_scan > -1e-9);
  }

  SUBCASE("alpha beyond gamma - 1 is caught") {
    auto bad = CounterexampleSpec::unchecked(3, 1.0 / 3.0 + 0.01);
    auto c = ce_convexity_certificate(bad, 256);
    CHECK(c.min_inequality_margin < 0.0);
  }
}

TEST_CASE("gradient inversion") {
  CounterexampleSpec s(3, 1.0 / 6.0);

  SUBCASE("round trip through the gradient map") {
    Rng rng(404);
    int done = 0;
    while (done < 200) {
      Eigen::VectorXd x = vec3(rng.uniform(-2, 2), rng.uniform(-2, 2),
                               rng.uniform(-0.9, 0.9));
      if (x.head(2).norm() < 1e-3) continue;
      auto e = ce_evaluate(s, x);
      auto back = ce_invert_gradient(s, e.gradient);
      REQUIRE(back.has_value());
      CHECK((*back - x).norm() <= 1e-8 * std::max(1.0, x.norm()));
      ++done;
    }
  }

  SUBCASE("midplane radial inverse has the closed form") {
    // x_n = 0: grad u = gamma |x'|^{gamma-1} x'/|x'|, so
    // |x'| = (|y'| / gamma)^{1/(gamma-1)}.
    Eigen::VectorXd y = vec3(0.8, 0.0, 0.0);
    auto x = ce_invert_gradient(s, y);
    REQUIRE(x.has_value());
    double want = std::pow(0.8 / s.gamma, 1.0 / (s.gamma - 1.0));
    CHECK((*x)[0] == doctest::Approx(want).epsilon(1e-10));
    CHECK(std::abs((*x)[2]) <= 1e-10);
  }

  SUBCASE("the punctured axis has no preimage") {
    CHECK_FALSE(ce_invert_gradient(s, vec3(0, 0, 1)).has_value());
    CHECK_FALSE(ce_invert_gradient(s, vec3(0, 0, -0.5)).has_value());
  }

  SUBCASE("the origin pulls back to the degenerate segment") {
    auto x = ce_invert_gradient(s, vec3(0, 0, 0));
    if (x.has_value()) CHECK(x->head(2).norm() <= 1e-10);
  }
}

TEST_CASE("induced density degenerates at the boundary") {
  CounterexampleSpec s(3, 1.0 / 6.0);

  SUBCASE("scan rows decrease strictly and collapse by 1e3") {
    std::vector<Eigen::VectorXd> approach;
    for (int k = 1; k <= 6; ++k)
      approach.push_back(vec3(1.0, 0.0, 1.0 - std::pow(4.0, -k)));
    auto rows = ce_degeneracy_scan(s, 10.0, approach);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].log_F < rows[i - 1].log_F);
    CHECK(rows.back().log_F - rows.front().log_F <= std::log(1e-3));
  }

  SUBCASE("log density agrees with the direct value when it fits a double") {
    Eigen::VectorXd x = vec3(0.8, 0.2, 0.5);
    CHECK(std::log(ce_induced_density(s, x)) ==
          doctest::Approx(ce_induced_density_log(s, x)).epsilon(1e-10));
  }

  SUBCASE("density stays positive away from the boundary") {
    double mn = 1e300;
    for (double r : {0.5, 1.0, 2.0})
      for (double t = -0.9; t <= 0.9; t += 0.1)
        mn = std::min(mn, ce_induced_density(s, vec3(r, 0, t)));
    CHECK(mn > 0.0);
  }

  SUBCASE("scan rejects sequences that leave the slab or the ball") {
    CHECK_THROWS(ce_degeneracy_scan(s, 10.0, {vec3(1, 0, 1.0)}));
    CHECK_THROWS(ce_degeneracy_scan(s, 0.5, {vec3(1, 0, 0.0)}));
  }
}

TEST_CASE("gradient map is monotone") {
  CounterexampleSpec s(3, 1.0 / 6.0);
  Rng rng(31);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> samples;
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x = vec3(rng.uniform(-2, 2), rng.uniform(-2, 2),
                             rng.uniform(-0.95, 0.95));
    if (x.head(2).norm() < 1e-6) continue;
    samples.emplace_back(x, ce_evaluate(s, x).gradient);
  }
  // pairwise order-2 cyclic monotonicity defect of the true gradient samples
  CHECK(monotonicity_check(samples) <= 1e-10);
}
