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

// Dense complex kernels shared by the manifolds, optimizers and
// applications. All functions are pure.

#include <functional>
#include <utility>

#include "qmanopt/tensor.hpp"

namespace qmanopt {

/// Hermitian part (m + m^†)/2.
Matrix herm(const Matrix& m);
/// Anti-Hermitian part (m - m^†)/2.
Matrix skew(const Matrix& m);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Contracts the second and fourth axes of the (n, n, n, n) view of an
/// n^2 x n^2 matrix: result(i1, i2) = sum_j c[(i1, j), (i2, j)].
///
/// With the input-first Choi layout C = sum_kl |k><l| (x) Phi(|k><l|) this is
/// the map whose value is the identity exactly for trace-preserving channels.
Matrix partial_trace_first(const Matrix& c, Eigen::Index n);

/// U V^† from the thin SVD m = U S V^†. Throws DegeneracyError when the
/// smallest singular value is below 1e-12 times the largest.
Matrix polar_isometry(const Matrix& m);

struct QrFactors {
  Matrix q;  ///< k x n with orthonormal columns
  Matrix r;  ///< n x n upper triangular, real positive diagonal
};

/// Thin QR with the phase of every R diagonal entry absorbed into Q, which
/// makes the factorization unique.
QrFactors qr_unique(const Matrix& m);

struct EighResult {
  RealVector values;  ///< ascending
  Matrix vectors;     ///< columns are eigenvectors
};

/// Hermitian eigendecomposition. Requires ||h - h^†||_F <= 1e-10 ||h||_F.
EighResult eigh(const Matrix& h);

/// Lower Cholesky factor with real positive diagonal.
Matrix cholesky_lower(const Matrix& s);

/// Solves p X + X p = rhs for Hermitian positive-definite p and
/// anti-Hermitian rhs; the solution is anti-Hermitian.
Matrix solve_sylvester_skew(const Matrix& p, const Matrix& rhs);

/// A scalar function together with its derivative, for spectral calculus on
/// Hermitian matrices.
struct SpectralFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  /// Eigenvalues must be strictly positive (e.g. log).
  bool positive_domain = false;
  const char* name = "f";
};

const SpectralFunction& log_function();
const SpectralFunction& exp_function();

/// U f(L) U^† for h = U L U^†.
Matrix fun_herm(const Matrix& h, const SpectralFunction& f);

/// Frechet derivative of fun_herm at h in direction v (Daleckii-Krein):
/// U (F o (U^† v U)) U^† with F the first divided differences of f.
Matrix dfun_herm(const Matrix& h, const SpectralFunction& f, const Matrix& v);

/// Same as dfun_herm, with a precomputed eigendecomposition of h.
Matrix dfun_herm(const EighResult& h_eig, const SpectralFunction& f,
                 const Matrix& v);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Smallest singular value (0 for an empty matrix).
double min_singular_value(const Matrix& m);

}  // namespace qmanopt
