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

#include "sdot/linprog.hpp"

#include <limits>
#include <vector>

namespace sdot {

namespace {

constexpr double kTol = 1e-10;

// Tableau simplex on [A | I_artificial], Bland's rule throughout.
struct Tableau {
  Eigen::MatrixXd T;           // m x (n_total + 1), last column is rhs
  std::vector<int> basis;      // size m, column index of basic variable per row
  int m, n_total;

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int r = 0; r < m; ++r) {
      if (r != row && std::abs(T(r, col)) > 0.0) T.row(r) -= T(r, col) * T.row(row);
    }
    basis[static_cast<size_t>(row)] = col;
  }

  // Minimizes cost over columns [0, n_active). Returns false on unboundedness.
  bool run(const Eigen::VectorXd& cost, int n_active) {
    for (;;) {
      // Reduced costs from the current basis.
      Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
      for (int r = 0; r < m; ++r) y[r] = cost[basis[static_cast<size_t>(r)]];
      int enter = -1;
      for (int j = 0; j < n_active; ++j) {
        double rj = cost[j] - y.dot(T.col(j).head(m));
        if (rj < -kTol) { enter = j; break; }  // Bland: first improving index
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (T(r, enter) > kTol) {
          double ratio = T(r, n_total) / T(r, enter);
          if (ratio < best - kTol ||
              (ratio < best + kTol &&
               (leave < 0 || basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)]))) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpResult res;

  Tableau tab;
  tab.m = m;
  tab.n_total = n + m;
  tab.T.resize(m, n + m + 1);
  tab.T.block(0, 0, m, n) = A;
  tab.T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  tab.T.col(n + m) = b;
  for (int r = 0; r < m; ++r) {
    if (tab.T(r, n + m) < 0.0) tab.T.row(r) = -tab.T.row(r);
    // keep artificial column a positive unit column
    tab.T(r, n + r) = 1.0;
  }
  tab.basis.resize(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) tab.basis[static_cast<size_t>(r)] = n + r;

  // Phase 1: drive artificials to zero.
  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n + m);
  cost1.tail(m).setOnes();
  tab.run(cost1, n + m);
  double phase1 = 0.0;
  for (int r = 0; r < m; ++r)
    if (tab.basis[static_cast<size_t>(r)] >= n) phase1 += tab.T(r, n + m);
  if (phase1 > 1e-8) {
    res.status = LpResult::Status::kInfeasible;
    return res;
  }
  // Pivot lingering zero-level artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[static_cast<size_t>(r)] >= n) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab.T(r, j)) > 1e-9) { enter = j; break; }
      }
      if (enter >= 0) tab.pivot(r, enter);
    }
  }

  // Phase 2 over the original columns only (artificials forbidden by cost).
  Eigen::VectorXd cost2(n + m);
  cost2.head(n) = c;
  cost2.tail(m).setConstant(1e30);
  if (!tab.run(cost2, n)) {
    res.status = LpResult::Status::kUnbounded;
    return res;
  }

  res.status = LpResult::Status::kOptimal;
  res.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    int bi = tab.basis[static_cast<size_t>(r)];
    if (bi < n) res.x[bi] = tab.T(r, n + m);
  }
  res.value = c.dot(res.x);
  // Duals from the artificial columns: the final tableau stores B^{-1} there
  // (up to the phase-1 row sign flips; those multiply both sides, so the
  // recovered multipliers are still valid for the flipped system, and we
  // re-derive against the original rows below).
  Eigen::MatrixXd Binv = tab.T.block(0, n, m, m);
  Eigen::VectorXd cB(m);
  for (int r = 0; r < m; ++r) {
    int bi = tab.basis[static_cast<size_t>(r)];
    cB[r] = bi < n ? c[bi] : 0.0;
  }
  Eigen::VectorXd y = Binv.transpose() * cB;
  // Undo the sign flips applied to rows with negative rhs.
  for (int r = 0; r < m; ++r)
    if (b[r] < 0.0) y[r] = -y[r];
  res.dual = y;
  return res;
}

}  // namespace sdot
