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

#include <Eigen/Dense>
#include <cstdint>

namespace sdot {

// Counter-based generator: the stream is a pure function of (seed, counter),
// so results are reproducible bit-for-bit per seed regardless of call order
// across rebuilds of the same sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (no cached state, two uniforms per call).
  double gaussian();

  Eigen::VectorXd uniform_in_box(const Eigen::VectorXd& lo,
                                 const Eigen::VectorXd& hi);
  Eigen::VectorXd gaussian_vector(int dim, double sigma = 1.0);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace sdot
