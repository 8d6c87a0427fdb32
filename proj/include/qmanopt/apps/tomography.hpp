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

// Channel tomography: tetrahedral POVMs, random channels in the Choi
// representation, measurement datasets and the negative log-likelihood.
//
// Choi convention: C = sum_{k,l} |k><l| (x) Phi(|k><l|), so the input system
// is the first tensor factor and Tr over the first factor of C is the
// identity for trace-preserving channels.

#include <cstdint>
#include <vector>

#include "qmanopt/tensor.hpp"

namespace qmanopt {

struct LossAndGrad {
  double loss = 0.0;
  ComplexTensor egrad;
};

struct TetrahedralPovm {
  std::size_t n_qubits = 0;
  /// 4^n elements of size 2^n x 2^n.
  std::vector<Matrix> elements;
};

/// Single-qubit elements M_k = (I + s_k . sigma) / 4; multi-qubit elements
/// are Kronecker products with k = sum_q k_q 4^(n-1-q).
TetrahedralPovm build_tetrahedral_povm(std::size_t n_qubits);

struct Channel {
  std::size_t n_qubits = 0;
  Matrix choi;
  /// Empty when the channel was not built from Kraus operators.
  std::vector<Matrix> kraus;
};

Matrix choi_from_kraus(const std::vector<Matrix>& kraus);
/// A with A A^† equal to the Choi matrix of `kraus`:
/// A[(k, a), i] = K_i[a, k].
Matrix choi_param_from_kraus(const std::vector<Matrix>& kraus);

/// Kraus operators sliced from a random (2^n r) x 2^n isometry.
Channel random_channel(std::size_t n_qubits, std::size_t kraus_rank, std::uint64_t seed);
Channel identity_channel(std::size_t n_qubits);
/// rho -> Tr(rho) I / 2^n, with Choi matrix I / 2^n.
Channel depolarizing_channel(std::size_t n_qubits);

/// Phi(rho) = Tr_first[(rho^T (x) I) C].
Matrix apply_channel(const Matrix& choi, const Matrix& rho);

/// Tr(M_k Phi(rho)) for every POVM element.
std::vector<double> outcome_probabilities(const Matrix& choi, const Matrix& rho,
                                          const TetrahedralPovm& povm);

struct TomographyDataset {
  std::vector<Matrix> rho_in;
  std::vector<std::size_t> outcome_index;
  /// Per-entry weights of the log-likelihood. Empty means 1/N each.
  std::vector<double> weights;

  std::size_t size() const { return rho_in.size(); }
};

/// Random pure input states with one categorically drawn outcome each.
TomographyDataset sample_dataset(const Channel& channel, std::size_t n_states,
                                 const TetrahedralPovm& povm, std::uint64_t seed);

/// Expected-likelihood dataset: every (state, outcome) pair with weight
/// p_k / n_states, for random pure input states.
TomographyDataset exact_probability_dataset(const Channel& channel, std::size_t n_states,
                                            const TetrahedralPovm& povm,
                                            std::uint64_t seed);

/// loss = -sum_i w_i log p_i with p_i = Tr(A A^† (rho_i^T (x) M_{k_i})) and
/// gradient E = -2 sum_i w_i (rho_i^T (x) M_{k_i}) A / p_i. `a` has shape
/// (4^n, r). Throws LikelihoodDegeneracyError when some p_i <= 1e-300.
LossAndGrad likelihood_loss_and_grad(const ComplexTensor& a,
                                     const TomographyDataset& dataset,
                                     const TetrahedralPovm& povm);

/// (1 / 2^n) ||C1 - C2||_tr. Ranges over [0, 2].
double jamiolkowski_distance(const Matrix& c1, const Matrix& c2, std::size_t n_qubits);

}  // namespace qmanopt
