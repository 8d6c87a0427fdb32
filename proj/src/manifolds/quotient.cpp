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

#include <cmath>
#include <limits>

#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/manifolds.hpp"
#include "manifolds/common.hpp"

namespace qmanopt {

using detail::real_inner;

namespace {

constexpr double kRankFloor = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tangent projection on the Stiefel manifold in isometry coordinates.
Matrix stiefel_tangent(const Matrix& b, const Matrix& w) {
  return w - b * herm(b.adjoint() * w);
}

/// Horizontality residual that never throws.
double safe_vertical_norm(const Matrix& a, const Matrix& v) {
  try {
    return vertical_component(a, v).norm();
  } catch (const Error&) {
    return kInf;
  }
}

double safe_povm_vertical_norm(const Matrix& a, const Matrix& v) {
  try {
    return povm_vertical_component(a, v).norm();
  } catch (const Error&) {
    return kInf;
  }
}

void require_full_rank(const Matrix& a, const char* what) {
  Eigen::LLT<Matrix> llt(a.adjoint() * a);
  if (llt.info() != Eigen::Success) {
    throw DegeneracyError(std::string(what) + ": rank collapse");
  }
}

}  // namespace

Eigen::Index exact_sqrt(Eigen::Index rows) {
  if (rows <= 0) return -1;
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rows))));
  while (n * n > rows) --n;
  while ((n + 1) * (n + 1) <= rows) ++n;
  return n * n == rows ? n : -1;
}

Matrix choi_to_isometry(const Matrix& a) {
  const Eigen::Index n = exact_sqrt(a.rows());
  if (n < 0) throw ShapeError("choi parametrization needs n^2 rows");
  const Eigen::Index r = a.cols();
  Matrix b(n * r, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index q = 0; q < r; ++q) b(j * r + q, i) = a(i * n + j, q);
    }
  }
  return b;
}

Matrix isometry_to_choi(const Matrix& b, Eigen::Index n) {
  if (n <= 0 || b.cols() != n || b.rows() % n != 0) {
    throw ShapeError("isometry_to_choi: expected (n r) x n");
  }
  const Eigen::Index r = b.rows() / n;
  Matrix a(n * n, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index q = 0; q < r; ++q) a(i * n + j, q) = b(j * r + q, i);
    }
  }
  return a;
}

Matrix povm_to_isometry(const Matrix& stacked) {
  const Eigen::Index n = stacked.cols();
  if (n == 0 || stacked.rows() % n != 0) {
    throw ShapeError("povm stack needs (m n) x n");
  }
  Matrix b(stacked.rows(), n);
  for (Eigen::Index i = 0; i < stacked.rows() / n; ++i) {
    b.middleRows(i * n, n) = stacked.middleRows(i * n, n).adjoint();
  }
  return b;
}

Matrix isometry_to_povm(const Matrix& b) { return povm_to_isometry(b); }

Matrix vertical_component(const Matrix& a, const Matrix& v) {
  const Matrix av = a.adjoint() * v;
  return a * solve_sylvester_skew(a.adjoint() * a, av - av.adjoint());
}

Matrix povm_vertical_component(const Matrix& stacked, const Matrix& v) {
  const Eigen::Index n = stacked.cols();
  Matrix out(stacked.rows(), n);
  for (Eigen::Index i = 0; i < stacked.rows() / n; ++i) {
    out.middleRows(i * n, n) =
        vertical_component(stacked.middleRows(i * n, n), v.middleRows(i * n, n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density: unit sphere of full-rank n x r matrices

void DensityManifold::validate_element_shape(std::span<const std::size_t> trailing) const {
  if (trailing[1] > trailing[0]) {
    throw ShapeError("density parametrization needs n x r with r <= n, got " +
                     shape_to_string(trailing));
  }
}

Matrix DensityManifold::random_point(Eigen::Index rows, Eigen::Index cols,
                                     Rng& rng) const {
  const Matrix g = rng.complex_gaussian(rows, cols);
  return g / g.norm();
}

Matrix DensityManifold::proj(const Matrix& a, const Matrix& w) const {
  const Matrix t = w - real_inner(a, w) * a;
  return t - vertical_component(a, t);
}

double DensityManifold::inner(const Matrix&, const Matrix& v, const Matrix& w) const {
  return real_inner(v, w);
}

Matrix DensityManifold::egrad_to_rgrad(const Matrix& a, const Matrix& e) const {
  return proj(a, e);
}

Matrix DensityManifold::retraction(const Matrix& a, const Matrix& v) const {
  const Matrix s = a + v;
  const double norm = s.norm();
  if (!(norm > 0.0)) throw DegeneracyError("density retraction: zero matrix");
  const Matrix out = s / norm;
  require_full_rank(out, "density retraction");
  return out;
}

Matrix DensityManifold::vector_transport(const Matrix& a, const Matrix& v,
                                         const Matrix& w) const {
  return proj(retraction(a, w), v);
}

ResidualReport DensityManifold::check_point(const Matrix& a) const {
  ResidualReport r;
  r.residuals.push_back({"unit_norm", std::abs(a.norm() - 1.0)});
  r.margins.push_back({"min_singular_value", min_singular_value(a), kRankFloor});
  return r;
}

ResidualReport DensityManifold::check_tangent(const Matrix& a, const Matrix& v) const {
  ResidualReport r;
  r.residuals.push_back({"tangency", std::abs(real_inner(a, v))});
  r.residuals.push_back({"horizontality", safe_vertical_norm(a, v)});
  return r;
}

// ---------------------------------------------------------------------------
// Choi: reshaped isometries, A is n^2 x r

void ChoiManifold::validate_element_shape(std::span<const std::size_t> trailing) const {
  const Eigen::Index n = exact_sqrt(static_cast<Eigen::Index>(trailing[0]));
  if (n < 0) {
    throw ShapeError("choi parametrization needs n^2 rows, got " +
                     shape_to_string(trailing));
  }
  if (trailing[1] > trailing[0]) {
    throw ShapeError("choi rank r must satisfy r <= n^2, got " +
                     shape_to_string(trailing));
  }
}

Matrix ChoiManifold::random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const {
  const Eigen::Index n = exact_sqrt(rows);
  return isometry_to_choi(polar_isometry(rng.complex_gaussian(n * cols, n)), n);
}

Matrix ChoiManifold::proj(const Matrix& a, const Matrix& w) const {
  const Eigen::Index n = exact_sqrt(a.rows());
  const Matrix t = isometry_to_choi(
      stiefel_tangent(choi_to_isometry(a), choi_to_isometry(w)), n);
  return t - vertical_component(a, t);
}

double ChoiManifold::inner(const Matrix&, const Matrix& v, const Matrix& w) const {
  return real_inner(v, w);
}

Matrix ChoiManifold::egrad_to_rgrad(const Matrix& a, const Matrix& e) const {
  return proj(a, e);
}

Matrix ChoiManifold::retraction(const Matrix& a, const Matrix& v) const {
  const Eigen::Index n = exact_sqrt(a.rows());
  const Matrix out = isometry_to_choi(
      polar_isometry(choi_to_isometry(a) + choi_to_isometry(v)), n);
  require_full_rank(out, "choi retraction");
  return out;
}

Matrix ChoiManifold::vector_transport(const Matrix& a, const Matrix& v,
                                      const Matrix& w) const {
  return proj(retraction(a, w), v);
}

ResidualReport ChoiManifold::check_point(const Matrix& a) const {
  const Eigen::Index n = exact_sqrt(a.rows());
  ResidualReport r;
  r.residuals.push_back(
      {"partial_trace",
       (partial_trace_first(a * a.adjoint(), n) - Matrix::Identity(n, n)).norm()});
  r.margins.push_back({"min_singular_value", min_singular_value(a), kRankFloor});
  return r;
}

ResidualReport ChoiManifold::check_tangent(const Matrix& a, const Matrix& v) const {
  const Matrix b = choi_to_isometry(a);
  ResidualReport r;
  r.residuals.push_back(
      {"tangency", herm(b.adjoint() * choi_to_isometry(v)).norm()});
  r.residuals.push_back({"horizontality", safe_vertical_norm(a, v)});
  return r;
}

// ---------------------------------------------------------------------------
// POVM: stacked blocks A_i with sum_i A_i A_i^† = I

void PovmManifold::validate_element_shape(std::span<const std::size_t> trailing) const {
  if (trailing[1] != trailing[2]) {
    throw ShapeError("povm elements need shape (m, n, n), got " +
                     shape_to_string(trailing));
  }
}

Matrix PovmManifold::random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const {
  return isometry_to_povm(polar_isometry(rng.complex_gaussian(rows, cols)));
}

Matrix PovmManifold::proj(const Matrix& a, const Matrix& w) const {
  const Matrix t = isometry_to_povm(
      stiefel_tangent(povm_to_isometry(a), povm_to_isometry(w)));
  return t - povm_vertical_component(a, t);
}

double PovmManifold::inner(const Matrix&, const Matrix& v, const Matrix& w) const {
  return real_inner(v, w);
}

Matrix PovmManifold::egrad_to_rgrad(const Matrix& a, const Matrix& e) const {
  return proj(a, e);
}

Matrix PovmManifold::retraction(const Matrix& a, const Matrix& v) const {
  const Matrix out =
      isometry_to_povm(polar_isometry(povm_to_isometry(a) + povm_to_isometry(v)));
  const Eigen::Index n = out.cols();
  for (Eigen::Index i = 0; i < out.rows() / n; ++i) {
    require_full_rank(out.middleRows(i * n, n), "povm retraction");
  }
  return out;
}

Matrix PovmManifold::vector_transport(const Matrix& a, const Matrix& v,
                                      const Matrix& w) const {
  return proj(retraction(a, w), v);
}

ResidualReport PovmManifold::check_point(const Matrix& a) const {
  const Eigen::Index n = a.cols();
  Matrix sum = Matrix::Zero(n, n);
  double min_sv = kInf;
  for (Eigen::Index i = 0; i < a.rows() / n; ++i) {
    const auto block = a.middleRows(i * n, n);
    sum += block * block.adjoint();
    min_sv = std::min(min_sv, min_singular_value(block));
  }
  ResidualReport r;
  r.residuals.push_back({"completeness", (sum - Matrix::Identity(n, n)).norm()});
  r.margins.push_back({"min_singular_value", min_sv, kRankFloor});
  return r;
}

ResidualReport PovmManifold::check_tangent(const Matrix& a, const Matrix& v) const {
  const Matrix b = povm_to_isometry(a);
  ResidualReport r;
  r.residuals.push_back({"tangency", herm(b.adjoint() * povm_to_isometry(v)).norm()});
  r.residuals.push_back({"horizontality", safe_povm_vertical_norm(a, v)});
  return r;
}

}  // namespace qmanopt
