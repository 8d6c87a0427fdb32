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

// Finite-difference and property checks that certify the manifold
// primitives and gradient formulas. Every check owns a seeded random stream
// and is reproducible.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qmanopt/manifold.hpp"

namespace qmanopt {

/// Result of one check: a measured value per trial and the accepted range.
struct CheckReport {
  std::string check;
  std::string manifold;
  std::string detail;
  std::vector<double> values;
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  /// Set when a quantity is identically zero and a ratio test is skipped.
  bool exact = false;
  bool passed = false;

  /// Value farthest outside (or closest to the edge of) the accepted range.
  double worst() const;
  /// Recomputes `passed` from the values and bounds.
  void finalize();
  /// One JSON object per report, keys in fixed order.
  std::string to_json() const;
};

/// Element sizes used to build trailing shapes for every kind.
struct ManifoldSizes {
  std::size_t n = 3;  ///< matrix dimension
  std::size_t p = 2;  ///< stiefel columns
  std::size_t r = 2;  ///< density/choi rank
  std::size_t m = 3;  ///< povm elements
};

/// Element shape of `kind` for the given sizes (stiefel (n, p), hermitian and
/// hpd (n, n), density (n, r), choi (n^2, r), povm (m, n, n)).
Shape element_shape(ManifoldKind kind, const ManifoldSizes& sizes);

/// Smooth real loss with its Euclidean gradient under the library convention.
struct TestLoss {
  std::string name;
  std::function<double(const ComplexTensor&)> value;
  std::function<ComplexTensor(const ComplexTensor&)> egrad;
};

/// f(X) = Re Tr(G^† X).
TestLoss linear_test_loss(const Shape& shape, Rng& rng);
/// f(X) = sum over copies of ||M X - T||_F^2 with random M, T.
TestLoss quadratic_test_loss(const Shape& shape, Rng& rng);
/// `loss` with its gradient multiplied by `factor` (negative control).
TestLoss scaled_gradient_loss(TestLoss loss, double factor);

/// Central-difference step used by the finite-difference checks.
inline constexpr double kFiniteDifferenceStep = 1e-5;

/// For random tangent v, compares inner(x, grad_R f, v) with
/// (f(R_x(tv)) - f(R_x(-tv))) / 2t at t = 1e-5 with v of unit metric norm.
/// Values are |analytic - fd| / max(|fd|, 0.1 |grad| |v|); threshold 1e-5.
CheckReport gradient_check(const Manifold& manifold, const TestLoss& loss,
                           const Shape& shape, int trials, std::uint64_t seed,
                           double threshold = 1e-5);

/// inner(x, egrad_to_rgrad(x, e), v) = Re Tr(e^† v) for random e and
/// `directions` random tangents per trial; relative error < 1e-8.
CheckReport rgrad_contract_check(const Manifold& manifold, const Shape& shape,
                                 int trials, int directions, std::uint64_t seed);

/// Fits log ||R(x, tv) - (x + tv)|| against log t for t in {1e-1 .. 1e-4} with
/// unit-norm tangent v. Values are slopes; accepted range [1.9, 2.3]. A
/// retraction that is exactly x + tv is flagged `exact` and passes.
CheckReport retraction_order_check(const Manifold& manifold, const Shape& shape,
                                   int trials, std::uint64_t seed);

/// ||(R(x, hv) - R(x, -hv)) / 2h - v|| / ||v|| at h = 1e-5; threshold 1e-6.
/// For hpd this certifies the exponential map's initial velocity.
CheckReport retraction_velocity_check(const Manifold& manifold, const Shape& shape,
                                      int trials, std::uint64_t seed);

enum class GaugeLoss { kZero, kInvariant, kGaugeDependent };

/// One rsgd step and one radam step from A and from a gauge-rotated
/// representative (A Q, or A_i Q_i blockwise for povm), with the loss gradient
/// evaluated at each representative. Values are the largest deviation of the
/// downstream objects (A A^† or {A_i A_i^†}); threshold 1e-9.
/// Quotient kinds only; throws ConfigError otherwise.
CheckReport gauge_invariance_check(const Manifold& manifold, const Shape& shape,
                                   int trials, std::uint64_t seed,
                                   GaugeLoss loss = GaugeLoss::kInvariant,
                                   int steps = 1);

/// Transport properties: tangency at the destination, linearity, transport
/// along zero, and for hpd/hermitian metric preservation (parallel transport
/// is an isometry).
std::vector<CheckReport> transport_checks(const Manifold& manifold, const Shape& shape,
                                          int trials, std::uint64_t seed);

/// Constraint laws: random points pass check_point, random_tangent and proj
/// outputs pass check_tangent, retraction outputs (steps 0.01, 0.1, 1) pass
/// check_point, and transported vectors pass check_tangent at the destination.
/// Values are the worst residuals per trial; threshold 1e-8.
std::vector<CheckReport> manifold_law_checks(const Manifold& manifold,
                                             const Shape& shape, int trials,
                                             std::uint64_t seed);

/// Every check above for one manifold variant (gauge checks for quotient
/// kinds only).
std::vector<CheckReport> run_manifold_suite(const Manifold& manifold,
                                            const ManifoldSizes& sizes, int trials,
                                            std::uint64_t seed);

}  // namespace qmanopt
