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

#include "qmanopt/apps/gate_decomposition.hpp"

#include <array>

#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"

namespace qmanopt {
namespace {

constexpr int kLayers = 4;

void require_vars_shape(const ComplexTensor& vars) {
  if (vars.shape() != kGateDecompositionShape) {
    throw ShapeError("gate decomposition variables must have shape " +
                     shape_to_string(kGateDecompositionShape) + ", got " +
                     shape_to_string(vars.shape()));
  }
}

Matrix factor(const ComplexTensor& vars, int layer, int slot) {
  const auto offset = static_cast<std::size_t>((layer * 2 + slot) * 4);
  return Eigen::Map<const RowMajorMatrix>(vars.data().data() + offset, 2, 2);
}

/// [K3, C, K2, C, K1, C, K0]; layer t sits at position 6 - 2t.
std::array<Matrix, 7> factors(const ComplexTensor& vars) {
  const Matrix c = cnot_matrix();
  std::array<Matrix, 7> out;
  for (int t = 0; t < kLayers; ++t) {
    out[static_cast<std::size_t>(6 - 2 * t)] = kron(factor(vars, t, 0), factor(vars, t, 1));
    if (t > 0) out[static_cast<std::size_t>(7 - 2 * t)] = c;
  }
  return out;
}

}  // namespace

Matrix cnot_matrix() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 3) = 1.0;
  c(3, 2) = 1.0;
  return c;
}

Matrix haar_unitary(Eigen::Index n, Rng& rng) {
  return qr_unique(rng.complex_gaussian(n, n)).q;
}

Matrix decomposition_unitary(const ComplexTensor& vars) {
  require_vars_shape(vars);
  Matrix d = Matrix::Identity(4, 4);
  for (const Matrix& f : factors(vars)) d = d * f;
  return d;
}

LossAndGrad gate_decomposition_loss_and_grad(const ComplexTensor& vars,
                                             const Matrix& target) {
  require_vars_shape(vars);
  if (target.rows() != 4 || target.cols() != 4) {
    throw ShapeError("gate decomposition target must be 4x4");
  }
  const std::array<Matrix, 7> f = factors(vars);
  std::array<Matrix, 8> prefix;
  std::array<Matrix, 8> suffix;
  prefix[0] = Matrix::Identity(4, 4);
  for (std::size_t i = 0; i < 7; ++i) prefix[i + 1] = prefix[i] * f[i];
  suffix[7] = Matrix::Identity(4, 4);
  for (std::size_t i = 7; i-- > 0;) suffix[i] = f[i] * suffix[i + 1];

  const Matrix residual = prefix[7] - target;
  const Matrix g_d = 2.0 * residual;
  LossAndGrad out{residual.squaredNorm(), ComplexTensor(kGateDecompositionShape)};
  for (int t = 0; t < kLayers; ++t) {
    const auto pos = static_cast<std::size_t>(6 - 2 * t);
    const Matrix g_k = prefix[pos].adjoint() * g_d * suffix[pos + 1].adjoint();
    const KronAdjoint g = kron_adjoint(g_k, factor(vars, t, 0), factor(vars, t, 1));
    const auto offset = static_cast<std::size_t>(t * 8);
    Eigen::Map<RowMajorMatrix>(out.egrad.data().data() + offset, 2, 2) = g.ga;
    Eigen::Map<RowMajorMatrix>(out.egrad.data().data() + offset + 4, 2, 2) = g.gb;
  }
  return out;
}

KronAdjoint kron_adjoint(const Matrix& g, const Matrix& a, const Matrix& b) {
  const Eigen::Index p = a.rows();
  const Eigen::Index q = b.rows();
  if (a.cols() != p || b.cols() != q || g.rows() != p * q || g.cols() != p * q) {
    throw ShapeError("kron_adjoint: expected square a, b and g of size pq x pq");
  }
  KronAdjoint out{Matrix::Zero(p, p), Matrix::Zero(q, q)};
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto block = g.block(i * q, j * q, q, q);
      out.ga(i, j) = block.cwiseProduct(b.conjugate()).sum();
      out.gb += block * std::conj(a(i, j));
    }
  }
  return out;
}

}  // namespace qmanopt
