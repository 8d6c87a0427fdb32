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

constexpr double kRandomShift = 1e-3;

Matrix strict_lower(const Matrix& m) {
  return m.triangularView<Eigen::StrictlyLower>();
}

/// Eigendecomposition of log(s) reusing the eigenvectors of s.
EighResult log_eigensystem(const Matrix& s) {
  EighResult e = eigh(s);
  if (!(e.values(0) > 0.0)) {
    throw DegeneracyError("hpd: matrix is not positive definite");
  }
  e.values = e.values.array().log();
  return e;
}

Matrix dlog(const EighResult& s_eig, const Matrix& v) {
  return dfun_herm(s_eig, log_function(), v);
}

Matrix dexp_at_log(const EighResult& log_eig, const Matrix& v) {
  return dfun_herm(log_eig, exp_function(), v);
}

/// Lower-triangular L' with strict part L + X and diagonal L_ii exp(X_ii / L_ii).
Matrix cholesky_geodesic(const Matrix& l, const Matrix& x) {
  Matrix out = strict_lower(l) + strict_lower(x);
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double lii = l(i, i).real();
    out(i, i) = lii * std::exp(x(i, i).real() / lii);
  }
  return out;
}

}  // namespace

Matrix HpdManifold::cholesky_lift(const Matrix& l, const Matrix& v) {
  const auto lower = l.triangularView<Eigen::Lower>();
  // M = L^{-1} v L^{-†}
  const Matrix lv = lower.solve(herm(v));
  const Matrix m = lower.solve(lv.adjoint()).adjoint();
  Matrix phi = strict_lower(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i) phi(i, i) = 0.5 * m(i, i).real();
  return l * phi;
}

void HpdManifold::validate_element_shape(std::span<const std::size_t> trailing) const {
  if (trailing[0] != trailing[1]) {
    throw ShapeError("hpd elements must be square, got " + shape_to_string(trailing));
  }
}

Matrix HpdManifold::random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const {
  const Matrix g = rng.complex_gaussian(rows, cols);
  return herm(g * g.adjoint()) + kRandomShift * Matrix::Identity(rows, cols);
}

Matrix HpdManifold::proj(const Matrix&, const Matrix& w) const { return herm(w); }

double HpdManifold::inner(const Matrix& s, const Matrix& v, const Matrix& w) const {
  if (metric_ == HpdMetric::kLogEuclidean) {
    const EighResult e = eigh(s);
    return real_inner(dlog(e, v), dlog(e, w));
  }
  const Matrix l = cholesky_lower(s);
  const Matrix x = cholesky_lift(l, v);
  const Matrix y = cholesky_lift(l, w);
  double acc = real_inner(strict_lower(x), strict_lower(y));
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double lii = l(i, i).real();
    acc += x(i, i).real() * y(i, i).real() / (lii * lii);
  }
  return acc;
}

Matrix HpdManifold::egrad_to_rgrad(const Matrix& s, const Matrix& e) const {
  const Matrix g = herm(e);
  if (metric_ == HpdMetric::kLogEuclidean) {
    const EighResult log_eig = log_eigensystem(s);
    return herm(dexp_at_log(log_eig, dexp_at_log(log_eig, g)));
  }
  // Directional derivative along v = X L^† + L X^† is 2 Re Tr((G L)^† X);
  // raise the index with the Log-Cholesky metric.
  const Matrix l = cholesky_lower(s);
  const Matrix j = g * l;
  Matrix xg = 2.0 * strict_lower(j);
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double lii = l(i, i).real();
    xg(i, i) = 2.0 * lii * lii * j(i, i).real();
  }
  return herm(xg * l.adjoint() + l * xg.adjoint());
}

Matrix HpdManifold::retraction(const Matrix& s, const Matrix& v) const {
  if (metric_ == HpdMetric::kLogEuclidean) {
    const EighResult e = eigh(s);
    if (!(e.values(0) > 0.0)) {
      throw DegeneracyError("hpd: matrix is not positive definite");
    }
    const Matrix log_s = fun_herm(s, log_function());
    return fun_herm(herm(log_s + dlog(e, v)), exp_function());
  }
  const Matrix l = cholesky_lower(s);
  const Matrix lp = cholesky_geodesic(l, cholesky_lift(l, v));
  return herm(lp * lp.adjoint());
}

Matrix HpdManifold::parallel_transport(const Matrix& s1, const Matrix& s2,
                                       const Matrix& v) const {
  if (metric_ == HpdMetric::kLogEuclidean) {
    return herm(dexp_at_log(log_eigensystem(s2), dlog(eigh(s1), v)));
  }
  const Matrix l1 = cholesky_lower(s1);
  const Matrix l2 = cholesky_lower(s2);
  const Matrix x = cholesky_lift(l1, v);
  Matrix y = strict_lower(x);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    y(i, i) = x(i, i).real() * l2(i, i).real() / l1(i, i).real();
  }
  return herm(y * l2.adjoint() + l2 * y.adjoint());
}

Matrix HpdManifold::vector_transport(const Matrix& s, const Matrix& v,
                                     const Matrix& w) const {
  return parallel_transport(s, retraction(s, w), v);
}

ResidualReport HpdManifold::check_point(const Matrix& s) const {
  ResidualReport r;
  r.residuals.push_back({"hermiticity", (s - s.adjoint()).norm()});
  double min_eig = -std::numeric_limits<double>::infinity();
  if (s.allFinite()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm(s), Eigen::EigenvaluesOnly);
    if (es.info() == Eigen::Success) min_eig = es.eigenvalues()(0);
  }
  r.margins.push_back({"min_eigenvalue", min_eig, 0.0});
  return r;
}

ResidualReport HpdManifold::check_tangent(const Matrix&, const Matrix& v) const {
  ResidualReport r;
  r.residuals.push_back({"tangency", (v - v.adjoint()).norm()});
  return r;
}

}  // namespace qmanopt
