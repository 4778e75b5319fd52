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

#include "sdot/serialize.hpp"

namespace sdot {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Full description of one deterministic run.  Serializes round-trip exactly;
// every report embeds it together with its hash.
struct ExperimentConfig {
  std::string command;  // solve|verify|counterexample|wedge|cone|probe|legendre

  int dim = 2;
  std::string source_name = "uniform";
  std::vector<double> source_params;
  std::string target_name = "gaussian";
  std::vector<double> target_params;
  int N = 64;
  double truncation_radius = 4.0;
  std::string quantize_mode = "grid";  // grid|lloyd

  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::uint64_t samples = 1000000;

  double alpha = 1.0 / 6.0;  // counterexample

  double lambda = 2.0;  // wedge
  double c = 1.0;
  double theta_min = 1e-3;  // wedge/cone geometric grid, ratio 2
  double theta_max = 1e-1;

  std::vector<int> levels = {16, 64, 256};  // probe

  std::string potential_file;  // legendre input

  std::string out_path = "report.json";
  bool force = false;

  json to_json() const;
  static ExperimentConfig from_json(const json& j);
};

// Dispatches to the module operation named by the command and writes the
// JSON report (config + hash + results) to out_path, with the timestamp in a
// ".time" sidecar so reruns are byte-identical.  Returns 0 when every check
// passes, 1 when a verification fails (report names the failing invariant),
// 2 on input or convergence errors.
int run(const ExperimentConfig& config);

// Resolves append-only output: returns out_path if free or force is set,
// otherwise out_path with an increasing numeric suffix.
std::string resolve_output_path(const std::string& out_path, bool force);

}  // namespace sdot
