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

#include <json.hpp>
#include <string>

#include "sdot/laguerre.hpp"
#include "sdot/potential.hpp"

namespace sdot {

using json = nlohmann::ordered_json;

// Reals travel as decimal strings that round-trip the exact double bits.
std::string real_to_string(double x);
double real_from_string(const std::string& s);
json real_to_json(double x);
double real_from_json(const json& j);
json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const json& j);

// {"dim": n, "pieces": [[[slope...], intercept], ...]}
json potential_to_json(const PiecewiseAffinePotential& u);
PiecewiseAffinePotential potential_from_json(const json& j);

// {"dim": n, "points": [[[slope...], value], ...]}
json hull_to_json(const LowerHullPotential& h);
LowerHullPotential hull_from_json(const json& j);

json diagram_to_json(const LaguerreDiagram& d);

// CSV of 2D cell polygons: cell_index, vertex_index, x, y.
std::string diagram_cells_csv(const LaguerreDiagram& d);

// FNV-1a over the canonical serialized text; reports embed this as the
// config hash.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace sdot
