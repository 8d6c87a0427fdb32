// Copyright 2026 The qmanopt Authors
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
#include <random>

#include "qmanopt/tensor.hpp"

namespace qmanopt {

/// Seeded random stream. Every sampler in the library draws from an explicit
/// Rng; there is no global generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  /// Entries with independent N(0, 1) real and imaginary parts.
  Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols);
  ComplexTensor complex_gaussian(const Shape& shape);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Seed from the QMANOPT_SEED environment variable, or `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 0);

}  // namespace qmanopt
