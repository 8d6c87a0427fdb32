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

#include "qmanopt/apps/tomography.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/manifold.hpp"

namespace qmanopt::acceptance {

/// Joint objective over one density variable a, a batch of two density
/// variables b and one Choi variable c:
///   ||rho_a - T_a||^2 + ||rho_b0 - T_b||^2 + ||C - C_t||^2 + Tr(rho_b1 Phi_C(rho_a)).
struct ProductLoss {
  Matrix target_a;
  Matrix target_b;
  Matrix target_choi;

  struct Gradients {
    double value = 0.0;
    ComplexTensor a;
    ComplexTensor b;
    ComplexTensor c;
  };

  static Matrix block(const ComplexTensor& t, std::size_t copy) {
    const auto rows = static_cast<Eigen::Index>(t.shape()[t.rank() - 2]);
    const auto cols = static_cast<Eigen::Index>(t.shape()[t.rank() - 1]);
    return Eigen::Map<const RowMajorMatrix>(t.data().data() + copy * rows * cols, rows, cols);
  }

  static void set_block(ComplexTensor& t, std::size_t copy, const Matrix& m) {
    Eigen::Map<RowMajorMatrix>(t.data().data() + copy * m.size(), m.rows(), m.cols()) = m;
  }

  Gradients evaluate(const ComplexTensor& a, const ComplexTensor& b,
                     const ComplexTensor& c) const {
    const Matrix aa = block(a, 0);
    const Matrix b0 = block(b, 0);
    const Matrix b1 = block(b, 1);
    const Matrix cc = block(c, 0);
    const Eigen::Index d = aa.rows();
    const Matrix rho_a = aa * aa.adjoint();
    const Matrix rho_b0 = b0 * b0.adjoint();
    const Matrix rho_b1 = b1 * b1.adjoint();
    const Matrix choi = cc * cc.adjoint();

    // Coupling Tr(C (rho_a^T (x) rho_b1)) = Tr(rho_b1 Phi_C(rho_a)).
    const Matrix x = kron(rho_a.transpose(), rho_b1);
    const Matrix phi = apply_channel(choi, rho_a);
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index p = 0; p < d; ++p)
          for (Eigen::Index q = 0; q < d; ++q) h(k, l) += choi(k * d + p, l * d + q) * rho_b1(q, p);

    Gradients g;
    g.value = (rho_a - target_a).squaredNorm() + (rho_b0 - target_b).squaredNorm() +
              (choi - target_choi).squaredNorm() + (choi * x).trace().real();
    g.a = ComplexTensor(a.shape());
    g.b = ComplexTensor(b.shape());
    g.c = ComplexTensor(c.shape());
    set_block(g.a, 0, 4.0 * (rho_a - target_a) * aa + 2.0 * h.transpose() * aa);
    set_block(g.b, 0, 4.0 * (rho_b0 - target_b) * b0);
    set_block(g.b, 1, 2.0 * phi * b1);
    set_block(g.c, 0, 4.0 * (choi - target_choi) * cc + 2.0 * x * cc);
    return g;
  }
};

}  // namespace qmanopt::acceptance
