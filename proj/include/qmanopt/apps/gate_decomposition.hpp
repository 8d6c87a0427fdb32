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

// Two-qubit gate decomposition D = K3 C K2 C K1 C K0 with K_t = u_{t,0} (x)
// u_{t,1} and C the CNOT gate. The variables are a stiefel batch of shape
// (4, 2, 2, 2) indexed (layer, slot).

#include "qmanopt/apps/tomography.hpp"
#include "qmanopt/random.hpp"

namespace qmanopt {

inline const Shape kGateDecompositionShape{4, 2, 2, 2};

Matrix cnot_matrix();

/// Haar-distributed n x n unitary.
Matrix haar_unitary(Eigen::Index n, Rng& rng);

Matrix decomposition_unitary(const ComplexTensor& vars);

/// loss = ||D - U||_F^2 with the gradient for every u_{t,slot}.
LossAndGrad gate_decomposition_loss_and_grad(const ComplexTensor& vars,
                                             const Matrix& target);

struct KronAdjoint {
  Matrix ga;
  Matrix gb;
};

/// Adjoint of (a, b) -> a (x) b:
/// ga[i,j] = sum_{k,l} g[(i,k),(j,l)] conj(b[k,l]) and
/// gb[k,l] = sum_{i,j} g[(i,k),(j,l)] conj(a[i,j]).
KronAdjoint kron_adjoint(const Matrix& g, const Matrix& a, const Matrix& b);

}  // namespace qmanopt
