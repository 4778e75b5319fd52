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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sdot/domain.hpp"
#include "sdot/potential.hpp"

namespace sdot {

// A point where >= dim+1 pieces are simultaneously active, carrying all the
// subdifferential mass of a piecewise affine potential.
struct ComplexVertex {
  Eigen::VectorXd x;
  std::vector<int> active;
  double subdiff_measure;  // |conv{active slopes}|
};

// Exact enumeration of subdifferential atoms; dim <= 2 only.
std::vector<ComplexVertex> enumerate_complex_vertices(
    const PiecewiseAffinePotential& u);

// |du(region)|.  Exact atom enumeration in dimensions 1 and 2; seeded
// Monte-Carlo over conv{slopes} in dimension >= 3 (deterministic per seed).
double ma_measure(const PiecewiseAffinePotential& u, const Domain& region,
                  std::uint64_t seed = 0,
                  std::size_t mc_samples = 200000);

struct SectionReport {
  bool section_nonempty = false;
  double interior_defect = 0.0;
  double ma_mass_of_section = 0.0;
};

// Section S = {u < a.x + c}; requires a strictly inside conv{slopes} so that
// S is bounded.  interior_defect = min_{dS}(u - l) - min_{S_bar}(u - l) >= 0.
SectionReport section_min_principle_check(const PiecewiseAffinePotential& u,
                                          const Eigen::VectorXd& affine_slope,
                                          double affine_intercept);

// Order-2 cyclic monotonicity defect of claimed (x, p in du(x)) samples:
// max over pairs of -(p_x - p_z).(x - z) clipped below at 0.
double monotonicity_check(
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& samples);

}  // namespace sdot
