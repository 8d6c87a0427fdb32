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

#include "qmanopt/linalg.hpp"

#include <cmath>
#include <string>

#include "qmanopt/errors.hpp"

namespace qmanopt {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-10;
constexpr double kDegenerateGap = 1e-12;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_tall(const Matrix& m, const char* what) {
  if (m.rows() < m.cols() || m.cols() == 0) {
    throw ShapeError(std::string(what) + ": expected k x n with k >= n >= 1, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const Matrix& h, const char* what) {
  require_square(h, what);
  const double asym = (h - h.adjoint()).norm();
  if (asym > kHermitianTolerance * h.norm()) {
    throw PreconditionError(std::string(what) +
                            ": matrix is not Hermitian (asymmetry " +
                            std::to_string(asym) + ")");
  }
}

}  // namespace

Matrix herm(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix skew(const Matrix& m) { return 0.5 * (m - m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace_first(const Matrix& c, Eigen::Index n) {
  if (n <= 0 || c.rows() != n * n || c.cols() != n * n) {
    throw ShapeError("partial_trace_first: expected a " + std::to_string(n * n) +
                     "x" + std::to_string(n * n) + " matrix, got " +
                     std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i1 = 0; i1 < n; ++i1) {
    for (Eigen::Index i2 = 0; i2 < n; ++i2) {
      Complex s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) s += c(i1 * n + j, i2 * n + j);
      out(i1, i2) = s;
    }
  }
  return out;
}

Matrix polar_isometry(const Matrix& m) {
  require_tall(m, "polar_isometry");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) < kRankTolerance * s(0)) {
    throw DegeneracyError("polar_isometry: input is rank deficient");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

QrFactors qr_unique(const Matrix& m) {
  require_tall(m, "qr_unique");
  const Eigen::Index k = m.rows();
  const Eigen::Index n = m.cols();
  Eigen::HouseholderQR<Matrix> qr(m);
  QrFactors f;
  f.q = qr.householderQ() * Matrix::Identity(k, n);
  f.r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();

  double largest = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) largest = std::max(largest, std::abs(f.r(j, j)));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(f.r(j, j));
    if (largest == 0.0 || mag < kRankTolerance * largest) {
      throw DegeneracyError("qr_unique: input is rank deficient");
    }
    const Complex phase = f.r(j, j) / mag;
    f.q.col(j) *= phase;
    f.r.row(j) *= std::conj(phase);
    f.r(j, j) = mag;
  }
  return f;
}

EighResult eigh(const Matrix& h) {
  require_hermitian(h, "eigh");
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm(h));
  if (es.info() != Eigen::Success) {
    throw DegeneracyError("eigh: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix cholesky_lower(const Matrix& s) {
  require_hermitian(s, "cholesky_lower");
  Eigen::LLT<Matrix> llt(herm(s));
  if (llt.info() != Eigen::Success) {
    throw DegeneracyError("cholesky_lower: matrix is not positive definite");
  }
  Matrix l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i).real() > 0.0)) {
      throw DegeneracyError("cholesky_lower: matrix is not positive definite");
    }
    l(i, i) = l(i, i).real();
  }
  return l;
}

Matrix solve_sylvester_skew(const Matrix& p, const Matrix& rhs) {
  require_square(rhs, "solve_sylvester_skew");
  if (rhs.rows() != p.rows()) throw ShapeError("solve_sylvester_skew: size mismatch");
  const EighResult e = eigh(p);
  if (!(e.values(0) > 0.0)) {
    throw DegeneracyError("solve_sylvester_skew: p is not positive definite");
  }
  Matrix t = e.vectors.adjoint() * rhs * e.vectors;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      t(i, j) /= e.values(i) + e.values(j);
    }
  }
  return skew(e.vectors * t * e.vectors.adjoint());
}

const SpectralFunction& log_function() {
  static const SpectralFunction f{[](double x) { return std::log(x); },
                                  [](double x) { return 1.0 / x; }, true, "log"};
  return f;
}

const SpectralFunction& exp_function() {
  static const SpectralFunction f{[](double x) { return std::exp(x); },
                                  [](double x) { return std::exp(x); }, false,
                                  "exp"};
  return f;
}

namespace {

void require_domain(const EighResult& e, const SpectralFunction& f) {
  if (f.positive_domain && !(e.values(0) > 0.0)) {
    throw DegeneracyError(std::string(f.name) +
                          ": matrix has a non-positive eigenvalue");
  }
}

}  // namespace

Matrix fun_herm(const Matrix& h, const SpectralFunction& f) {
  const EighResult e = eigh(h);
  require_domain(e, f);
  RealVector fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f.value(e.values(i));
  return herm(e.vectors * fv.cast<Complex>().asDiagonal() * e.vectors.adjoint());
}

Matrix dfun_herm(const EighResult& e, const SpectralFunction& f, const Matrix& v) {
  require_domain(e, f);
  const Eigen::Index n = e.values.size();
  if (v.rows() != n || v.cols() != n) throw ShapeError("dfun_herm: size mismatch");
  RealVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) fv(i) = f.value(e.values(i));
  Matrix t = e.vectors.adjoint() * v * e.vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double li = e.values(i);
      const double lj = e.values(j);
      const double dd = std::abs(li - lj) < kDegenerateGap
                            ? f.derivative(0.5 * (li + lj))
                            : (fv(i) - fv(j)) / (li - lj);
      t(i, j) *= dd;
    }
  }
  return e.vectors * t * e.vectors.adjoint();
}

Matrix dfun_herm(const Matrix& h, const SpectralFunction& f, const Matrix& v) {
  return dfun_herm(eigh(h), f, v);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace qmanopt
