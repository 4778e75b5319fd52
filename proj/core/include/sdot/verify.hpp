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

#include "sdot/ma_measure.hpp"
#include "sdot/solver.hpp"

namespace sdot {

// Empirical pushforward test: draws n_samples F-distributed points by
// seeded rejection sampling, routes each through transport_map, and returns
// max_i |empirical mass_i - m_i|.
double verify_pushforward(const LaguerreDiagram& diagram,
                          const SourceDensity& source,
                          const DiscreteMeasure& target,
                          std::size_t n_samples, std::uint64_t seed);

// Same sampler, exposing the per-atom empirical masses.
std::vector<double> pushforward_empirical_masses(const LaguerreDiagram& diagram,
                                                 const SourceDensity& source,
                                                 const DiscreteMeasure& target,
                                                 std::size_t n_samples,
                                                 std::uint64_t seed);

struct ProbeResult {
  Domain region = Domain::full_space(1);
  double ma_mass = 0.0;
  bool disjoint_from_source = false;
  bool pass = true;
};

struct AlexandrovReport {
  // (a) mass attributed to each cell vs its target mass
  std::vector<double> cell_masses;
  std::vector<double> cell_mass_errors;
  double max_cell_mass_error = 0.0;
  // (b) probe regions
  std::vector<ProbeResult> probes;
  // (c) slope containment in the closed target support hull
  bool slopes_in_target_hull = true;
  double hull_exhaustion = 0.0;  // fraction of target mass inside conv{slopes}
  bool pass = false;
};

// Checks the discrete weak Monge-Ampere identities on the induced potential:
// per-cell masses match the target atoms, probe regions disjoint from the
// closure of X carry no measure, and every slope lies in the target hull.
AlexandrovReport verify_alexandrov(const LaguerreDiagram& diagram,
                                   const SourceDensity& source,
                                   const DiscreteMeasure& target,
                                   const std::vector<Domain>& probe_regions,
                                   double tol);

}  // namespace sdot
