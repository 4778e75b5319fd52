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
#include <vector>

#include "sdot/density.hpp"

namespace sdot {

struct DiscreteMeasure {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> masses;  // positive, sum 1 within 1e-12
  double truncated_mass_deficit = 0.0;

  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  std::size_t size() const { return points.size(); }
  void validate() const;  // distinct points, positive masses, unit total
};

enum class QuantizeMode { kGrid, kLloyd };

// Quantizes the target density on Y truncated to B_R.  Grid mode partitions
// the truncated bounding box into N equal-volume cells and places each point
// at the G-weighted centroid of its cell (deterministic); Lloyd mode runs
// k-means on a seeded G-sample.  Cells carrying no G-mass are dropped and the
// remaining masses renormalized, so the result may hold fewer than N points.
DiscreteMeasure quantize_target(const SourceDensity& g, int N,
                                double truncation_radius, std::uint64_t seed,
                                QuantizeMode mode = QuantizeMode::kGrid);

// Splits N into `dim` grid factors, as balanced as N's factorization allows.
std::vector<int> grid_factorization(int N, int dim);

}  // namespace sdot
