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

#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/manifolds.hpp"
#include "manifolds/common.hpp"

namespace qmanopt {

using detail::real_inner;

void StiefelManifold::validate_element_shape(
    std::span<const std::size_t> trailing) const {
  if (trailing[0] < trailing[1]) {
    throw ShapeError("stiefel elements need n >= p, got " +
                     shape_to_string(trailing));
  }
}

Matrix StiefelManifold::random_point(Eigen::Index rows, Eigen::Index cols,
                                     Rng& rng) const {
  return qr_unique(rng.complex_gaussian(rows, cols)).q;
}

Matrix StiefelManifold::proj(const Matrix& u, const Matrix& w) const {
  return w - u * herm(u.adjoint() * w);
}

double StiefelManifold::inner(const Matrix& u, const Matrix& v,
                              const Matrix& w) const {
  if (metric_ == StiefelMetric::kEuclidean) return real_inner(v, w);
  // Re Tr(v^† (I - u u^†/2) w)
  return real_inner(v, w) - 0.5 * real_inner(u.adjoint() * v, u.adjoint() * w);
}

Matrix StiefelManifold::egrad_to_rgrad(const Matrix& u, const Matrix& e) const {
  if (metric_ == StiefelMetric::kEuclidean) return proj(u, e);
  return e - u * e.adjoint() * u;
}

Matrix StiefelManifold::cayley_retraction(const Matrix& u, const Matrix& v) {
  const Eigen::Index n = u.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix pu = id - 0.5 * u * u.adjoint();
  const Matrix w = pu * v * u.adjoint() - u * v.adjoint() * pu;
  return (id - 0.5 * w).partialPivLu().solve((id + 0.5 * w) * u);
}

Matrix StiefelManifold::retraction(const Matrix& u, const Matrix& v) const {
  switch (retraction_) {
    case StiefelRetraction::kSvd: return polar_isometry(u + v);
    case StiefelRetraction::kQr: return qr_unique(u + v).q;
    case StiefelRetraction::kCayley: return cayley_retraction(u, v);
  }
  throw ConfigError("unknown stiefel retraction");
}

Matrix StiefelManifold::vector_transport(const Matrix& u, const Matrix& v,
                                         const Matrix& w) const {
  return proj(retraction(u, w), v);
}

ResidualReport StiefelManifold::check_point(const Matrix& u) const {
  const Eigen::Index p = u.cols();
  ResidualReport r;
  r.residuals.push_back(
      {"isometry", (u.adjoint() * u - Matrix::Identity(p, p)).norm()});
  return r;
}

ResidualReport StiefelManifold::check_tangent(const Matrix& u, const Matrix& v) const {
  ResidualReport r;
  r.residuals.push_back({"tangency", herm(u.adjoint() * v).norm()});
  return r;
}

// ---------------------------------------------------------------------------

void HermitianManifold::validate_element_shape(
    std::span<const std::size_t> trailing) const {
  if (trailing[0] != trailing[1]) {
    throw ShapeError("hermitian elements must be square, got " +
                     shape_to_string(trailing));
  }
}

Matrix HermitianManifold::random_point(Eigen::Index rows, Eigen::Index cols,
                                       Rng& rng) const {
  return herm(rng.complex_gaussian(rows, cols));
}

Matrix HermitianManifold::proj(const Matrix&, const Matrix& w) const { return herm(w); }

double HermitianManifold::inner(const Matrix&, const Matrix& v, const Matrix& w) const {
  return real_inner(v, w);
}

Matrix HermitianManifold::egrad_to_rgrad(const Matrix&, const Matrix& e) const {
  return herm(e);
}

Matrix HermitianManifold::retraction(const Matrix& u, const Matrix& v) const {
  return u + v;
}

Matrix HermitianManifold::vector_transport(const Matrix&, const Matrix& v,
                                           const Matrix&) const {
  return v;
}

ResidualReport HermitianManifold::check_point(const Matrix& u) const {
  ResidualReport r;
  r.residuals.push_back({"hermiticity", (u - u.adjoint()).norm()});
  return r;
}

ResidualReport HermitianManifold::check_tangent(const Matrix&, const Matrix& v) const {
  ResidualReport r;
  r.residuals.push_back({"tangency", (v - v.adjoint()).norm()});
  return r;
}

}  // namespace qmanopt
