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

#include "sdot/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace sdot {

std::string real_to_string(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc())
    throw std::runtime_error("real_to_string: conversion failed");
  return std::string(buf, p);
}

double real_from_string(const std::string& s) {
  double x = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::runtime_error("real_from_string: bad real literal '" + s + "'");
  return x;
}

json real_to_json(double x) { return json(real_to_string(x)); }

double real_from_json(const json& j) {
  if (j.is_string()) return real_from_string(j.get<std::string>());
  return j.get<double>();
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real_to_json(v[i]));
  return a;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) v[i++] = real_from_json(e);
  return v;
}

json potential_to_json(const PiecewiseAffinePotential& u) {
  json j;
  j["dim"] = u.dim();
  json pieces = json::array();
  for (const auto& p : u.pieces())
    pieces.push_back(json::array({vector_to_json(p.slope), real_to_json(p.intercept)}));
  j["pieces"] = std::move(pieces);
  return j;
}

PiecewiseAffinePotential potential_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<AffinePiece> pieces;
  for (const auto& e : j.at("pieces")) {
    AffinePiece p{vector_from_json(e.at(0)), real_from_json(e.at(1))};
    if (p.slope.size() != dim)
      throw std::runtime_error("potential_from_json: slope dimension mismatch");
    pieces.push_back(std::move(p));
  }
  return PiecewiseAffinePotential(dim, std::move(pieces));
}

json hull_to_json(const LowerHullPotential& h) {
  json j;
  j["dim"] = h.dim();
  json pts = json::array();
  for (const auto& p : h.points())
    pts.push_back(json::array({vector_to_json(p.point), real_to_json(p.value)}));
  j["points"] = std::move(pts);
  return j;
}

LowerHullPotential hull_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<HullPoint> pts;
  for (const auto& e : j.at("points")) {
    HullPoint p{vector_from_json(e.at(0)), real_from_json(e.at(1))};
    if (p.point.size() != dim)
      throw std::runtime_error("hull_from_json: point dimension mismatch");
    pts.push_back(std::move(p));
  }
  return LowerHullPotential(dim, std::move(pts));
}

json diagram_to_json(const LaguerreDiagram& d) {
  json j;
  j["dim"] = d.dim;
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back(vector_to_json(p));
  j["points"] = std::move(pts);
  j["weights"] = vector_to_json(d.weights);
  json masses = json::array();
  for (double m : d.masses) masses.push_back(real_to_json(m));
  j["masses"] = std::move(masses);
  json adj = json::array();
  for (const auto& [a, b] : d.adjacency) adj.push_back(json::array({a, b}));
  j["adjacency"] = std::move(adj);
  return j;
}

std::string diagram_cells_csv(const LaguerreDiagram& d) {
  if (d.dim != 2)
    throw std::invalid_argument("diagram_cells_csv: 2D diagrams only");
  std::ostringstream os;
  os << "cell,vertex,x,y\n";
  for (size_t i = 0; i < d.cells2d.size(); ++i)
    for (size_t k = 0; k < d.cells2d[i].v.size(); ++k)
      os << i << ',' << k << ',' << real_to_string(d.cells2d[i].v[k][0]) << ','
         << real_to_string(d.cells2d[i].v[k][1]) << '\n';
  return os.str();
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sdot
