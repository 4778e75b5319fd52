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

#include "sdot/rng.hpp"

#include <cmath>

namespace sdot {

namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  // Two mixing rounds over (seed, counter) keyed by a distinct prefix each.
  std::uint64_t x = splitmix64(seed_ ^ 0x8f2d1ce4e5b9bf58ULL);
  std::uint64_t v = splitmix64(x ^ counter_);
  ++counter_;
  return v;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd Rng::uniform_in_box(const Eigen::VectorXd& lo,
                                    const Eigen::VectorXd& hi) {
  Eigen::VectorXd x(lo.size());
  for (int i = 0; i < lo.size(); ++i) x[i] = uniform(lo[i], hi[i]);
  return x;
}

Eigen::VectorXd Rng::gaussian_vector(int dim, double sigma) {
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x[i] = sigma * gaussian();
  return x;
}

}  // namespace sdot
