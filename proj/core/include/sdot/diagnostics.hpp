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

#include <string>

#include "sdot/solver.hpp"

namespace sdot {

// Boundary wedge X_theta = {x : -theta|x'| <= x_1 <= -c|x'|^lambda} and the
// matching slope cone Y_theta = {y : y_1 > 0, |y'| <= theta y_1}.
struct WedgeSpec {
  int n = 3;
  double lambda = 2.0;  // > 1
  double c = 1.0;       // > 0
  double theta = 0.1;   // in (0, 1)
};

struct ScalingRow {
  double theta = 0.0;
  double volume = 0.0;      // primary estimate (exact where available)
  double mc_volume = 0.0;   // Monte-Carlo cross-check
  double mc_stderr = 0.0;
  bool used_in_fit = false;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double fitted_exponent = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double theoretical_exponent = 0.0;
  double min_normalized_volume = 0.0;  // min volume / theta^(n-1), cone only
  std::string verdict;                 // MATCH / MISMATCH / LOWER_BOUND_OK / ...
};

// |X_theta| over a geometric theta grid with log-log exponent fit against
// (n - 1 + lambda) / (lambda - 1).  The radial integral collapses to an exact
// closed form; a per-theta rejection estimate provides the error bars.
ScalingReport wedge_volume_scaling(int n, double lambda, double c,
                                   const std::vector<double>& thetas,
                                   std::size_t samples, std::uint64_t seed);

// |Y_theta ∩ B_2| scaling for a convex target Y with 0 and e_1 in its
// closure; asserts the theta^(n-1) lower bound across the grid.
ScalingReport cone_volume_scaling(const Domain& Y,
                                  const std::vector<double>& thetas,
                                  std::size_t samples, std::uint64_t seed);

// Admissibility threshold 2(n-1)/(n-2) for the boundary exponent; n >= 3.
double lambda_threshold(int n);

enum class LambdaClass { kAdmissible, kBorderline, kInadmissible };
LambdaClass classify_lambda(int n, double lambda, double tol = 1e-12);

struct ProbeLevelRow {
  int N = 0;
  double max_cell_diameter = 0.0;
  double max_preimage_diameter = 0.0;
  double neighborhood_radius = 0.0;
  int iterations = 0;
};

struct ProbeReport {
  std::vector<ProbeLevelRow> rows;
  bool degenerate = false;
  std::string flag;  // REGULAR / DEGENERATE
};

// Refinement study of a solved transport family: at each level N the target
// density is quantized, the dual weights solved, and the maximum cell
// diameter plus the diameter of the preimage of shrinking neighborhoods of
// the probe targets recorded.  DEGENERATE when the diameters fail to decay
// by a factor 1.5 per 4x refinement over the last two levels.
ProbeReport strict_convexity_probe(const SourceDensity& source,
                                   const SourceDensity& target_density,
                                   const std::vector<int>& levels,
                                   const std::vector<Eigen::VectorXd>& probe_targets,
                                   double truncation_radius, std::uint64_t seed,
                                   QuantizeMode mode = QuantizeMode::kGrid,
                                   const LaguerreConfig& cfg = {},
                                   double solver_tol = 1e-7);

}  // namespace sdot
