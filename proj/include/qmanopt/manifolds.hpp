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

// Per-element implementations of the six manifold kinds, plus the coordinate
// changes the quotient kinds share with the Stiefel manifold.

#include "qmanopt/manifold.hpp"

namespace qmanopt {

// ---------------------------------------------------------------------------
// Coordinate changes

/// Isometry view of a Choi parametrization A (n^2 x r): B is (n r) x n with
/// B[(j, q), i] = A[(i, j), q]. B^†B equals the transpose of
/// partial_trace_first(A A^†), so the Choi constraint is B^†B = I.
Matrix choi_to_isometry(const Matrix& a);
Matrix isometry_to_choi(const Matrix& b, Eigen::Index n);

/// Isometry view of a POVM parametrization stored as the vertical stack of
/// blocks A_i (m n x n): B is the vertical stack of A_i^†, so
/// B^†B = sum_i A_i A_i^†.
Matrix povm_to_isometry(const Matrix& stacked);
Matrix isometry_to_povm(const Matrix& b);

/// Integer square root, or -1 if `rows` is not a perfect square.
Eigen::Index exact_sqrt(Eigen::Index rows);

/// Vertical component A Omega of v at A, with Omega solving
/// (A^†A) Omega + Omega (A^†A) = A^†v - v^†A.
Matrix vertical_component(const Matrix& a, const Matrix& v);

/// Blockwise vertical component for the stacked POVM layout.
Matrix povm_vertical_component(const Matrix& stacked, const Matrix& v);

// ---------------------------------------------------------------------------
// Stiefel

class StiefelManifold final : public ManifoldImpl {
 public:
  StiefelManifold(StiefelMetric metric, StiefelRetraction retraction)
      : metric_(metric), retraction_(retraction) {}

  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;

  /// (I - W/2)^{-1} (I + W/2) u with W = P v u^† - u v^† P, P = I - u u^†/2.
  static Matrix cayley_retraction(const Matrix& u, const Matrix& v);

 private:
  StiefelMetric metric_;
  StiefelRetraction retraction_;
};

// ---------------------------------------------------------------------------
// Hermitian matrices (flat)

class HermitianManifold final : public ManifoldImpl {
 public:
  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;
};

// ---------------------------------------------------------------------------
// Hermitian positive definite matrices

/// Complete geometries on HPD matrices. `retraction` is the exact exponential
/// map and `vector_transport` is parallel transport for both metrics; `proj`
/// is the Hermitian part (the tangent space is all Hermitian matrices).
class HpdManifold final : public ManifoldImpl {
 public:
  explicit HpdManifold(HpdMetric metric) : metric_(metric) {}

  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;

  /// Parallel transport of v from s1 to s2 (both HPD).
  Matrix parallel_transport(const Matrix& s1, const Matrix& s2, const Matrix& v) const;

  /// Lower-triangular X with real diagonal solving v = X L^† + L X^†.
  static Matrix cholesky_lift(const Matrix& l, const Matrix& v);

 private:
  HpdMetric metric_;
};

// ---------------------------------------------------------------------------
// Quotient kinds

/// Fixed-rank density matrices rho = A A^†, A on the unit sphere of n x r
/// full-rank matrices, modulo A ~ A Q.
class DensityManifold final : public ManifoldImpl {
 public:
  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;
};

/// Fixed-rank Choi matrices C = A A^†, A (n^2 x r) a reshaped isometry,
/// modulo A ~ A Q.
class ChoiManifold final : public ManifoldImpl {
 public:
  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;
};

/// POVMs with full-rank elements E_i = A_i A_i^†, modulo A_i ~ A_i Q_i.
/// Elements have tensor shape (m, n, n).
class PovmManifold final : public ManifoldImpl {
 public:
  std::size_t element_rank() const override { return 3; }
  void validate_element_shape(std::span<const std::size_t> trailing) const override;
  Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const override;
  Matrix proj(const Matrix& u, const Matrix& w) const override;
  double inner(const Matrix& u, const Matrix& v, const Matrix& w) const override;
  Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const override;
  Matrix retraction(const Matrix& u, const Matrix& v) const override;
  Matrix vector_transport(const Matrix& u, const Matrix& v,
                          const Matrix& w) const override;
  ResidualReport check_point(const Matrix& u) const override;
  ResidualReport check_tangent(const Matrix& u, const Matrix& v) const override;
};

}  // namespace qmanopt
