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

#include "qmanopt/random.hpp"

#include <cstdlib>
#include <string>

#include "qmanopt/errors.hpp"

namespace qmanopt {

Matrix Rng::complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  // Row-major fill order keeps matrix and tensor draws interchangeable.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal();
      const double im = normal();
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexTensor Rng::complex_gaussian(const Shape& shape) {
  ComplexTensor t(shape);
  for (Complex& z : t.data()) {
    const double re = normal();
    const double im = normal();
    z = Complex(re, im);
  }
  return t;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("QMANOPT_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("QMANOPT_SEED is not an unsigned integer: ") + env);
  }
}

}  // namespace qmanopt
