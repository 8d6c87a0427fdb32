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

#include "qmanopt/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qmanopt/errors.hpp"
#include "qmanopt/manifolds.hpp"

namespace qmanopt {

std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kStiefel: return "stiefel";
    case ManifoldKind::kHermitian: return "hermitian";
    case ManifoldKind::kHpd: return "hpd";
    case ManifoldKind::kDensity: return "density";
    case ManifoldKind::kChoi: return "choi";
    case ManifoldKind::kPovm: return "povm";
  }
  return "unknown";
}

std::string_view to_string(StiefelMetric metric) {
  return metric == StiefelMetric::kEuclidean ? "euclidean" : "canonical";
}

std::string_view to_string(StiefelRetraction retraction) {
  switch (retraction) {
    case StiefelRetraction::kSvd: return "svd";
    case StiefelRetraction::kQr: return "qr";
    case StiefelRetraction::kCayley: return "cayley";
  }
  return "unknown";
}

std::string_view to_string(HpdMetric metric) {
  return metric == HpdMetric::kLogCholesky ? "log_cholesky" : "log_euclidean";
}

ManifoldKind parse_manifold_kind(std::string_view name) {
  for (ManifoldKind k : kAllManifoldKinds) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown manifold kind '" + std::string(name) + "'");
}

ManifoldDescriptor ManifoldDescriptor::stiefel(StiefelMetric metric,
                                               StiefelRetraction retraction) {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kStiefel;
  d.stiefel_metric = metric;
  d.stiefel_retraction = retraction;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::hermitian() {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kHermitian;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::hpd(HpdMetric metric) {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kHpd;
  d.hpd_metric = metric;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::density() {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kDensity;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::choi() {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kChoi;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::povm() {
  ManifoldDescriptor d;
  d.kind = ManifoldKind::kPovm;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::of(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kStiefel: return stiefel();
    case ManifoldKind::kHermitian: return hermitian();
    case ManifoldKind::kHpd: return hpd();
    case ManifoldKind::kDensity: return density();
    case ManifoldKind::kChoi: return choi();
    case ManifoldKind::kPovm: return povm();
  }
  throw ConfigError("unknown manifold kind");
}

std::vector<ManifoldDescriptor> ManifoldDescriptor::all_variants() {
  std::vector<ManifoldDescriptor> out;
  for (StiefelMetric m : {StiefelMetric::kEuclidean, StiefelMetric::kCanonical}) {
    for (StiefelRetraction r : {StiefelRetraction::kSvd, StiefelRetraction::kQr,
                                StiefelRetraction::kCayley}) {
      out.push_back(stiefel(m, r));
    }
  }
  out.push_back(hermitian());
  out.push_back(hpd(HpdMetric::kLogCholesky));
  out.push_back(hpd(HpdMetric::kLogEuclidean));
  out.push_back(density());
  out.push_back(choi());
  out.push_back(povm());
  return out;
}

void ManifoldDescriptor::validate() const {
  const bool stiefel_kind = kind == ManifoldKind::kStiefel;
  const bool hpd_kind = kind == ManifoldKind::kHpd;
  if (!stiefel_kind && (stiefel_metric || stiefel_retraction)) {
    throw ConfigError(std::string(to_string(kind)) +
                      " does not accept Stiefel metric/retraction options");
  }
  if (!hpd_kind && hpd_metric) {
    throw ConfigError(std::string(to_string(kind)) +
                      " does not accept an HPD metric option");
  }
}

bool ManifoldDescriptor::is_quotient() const {
  return kind == ManifoldKind::kDensity || kind == ManifoldKind::kChoi ||
         kind == ManifoldKind::kPovm;
}

std::string ManifoldDescriptor::name() const {
  std::string s(to_string(kind));
  if (kind == ManifoldKind::kStiefel) {
    s += '[';
    s += to_string(stiefel_metric.value_or(StiefelMetric::kEuclidean));
    s += ',';
    s += to_string(stiefel_retraction.value_or(StiefelRetraction::kSvd));
    s += ']';
  } else if (kind == ManifoldKind::kHpd) {
    s += '[';
    s += to_string(hpd_metric.value_or(HpdMetric::kLogCholesky));
    s += ']';
  }
  return s;
}

// ---------------------------------------------------------------------------

bool ResidualReport::passes(double tolerance) const {
  for (const auto& r : residuals) {
    if (!(r.value < tolerance)) return false;
  }
  for (const auto& m : margins) {
    if (!(m.value > m.floor)) return false;
  }
  return true;
}

double ResidualReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : residuals) {
    worst = std::max(worst, r.value);
    if (std::isnan(r.value)) return r.value;
  }
  return worst;
}

double ResidualReport::residual(std::string_view name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return r.value;
  }
  throw std::out_of_range("no residual named " + std::string(name));
}

double ResidualReport::margin(std::string_view name) const {
  for (const auto& m : margins) {
    if (m.name == name) return m.value;
  }
  throw std::out_of_range("no margin named " + std::string(name));
}

void ResidualReport::merge_worst(const ResidualReport& other) {
  for (const auto& r : other.residuals) {
    auto it = std::find_if(residuals.begin(), residuals.end(),
                           [&](const ResidualEntry& e) { return e.name == r.name; });
    if (it == residuals.end()) {
      residuals.push_back(r);
    } else if (!(it->value >= r.value)) {
      it->value = r.value;
    }
  }
  for (const auto& m : other.margins) {
    auto it = std::find_if(margins.begin(), margins.end(),
                           [&](const MarginEntry& e) { return e.name == m.name; });
    if (it == margins.end()) {
      margins.push_back(m);
    } else if (!(it->value <= m.value)) {
      it->value = m.value;
    }
  }
}

std::string ResidualReport::summary() const {
  std::ostringstream os;
  os.precision(3);
  bool first = true;
  for (const auto& r : residuals) {
    os << (first ? "" : " ") << r.name << '=' << r.value;
    first = false;
  }
  for (const auto& m : margins) {
    os << (first ? "" : " ") << m.name << '=' << m.value;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Matrix ManifoldImpl::random_tangent(const Matrix& u, Rng& rng) const {
  return proj(u, rng.complex_gaussian(u.rows(), u.cols()));
}

std::unique_ptr<ManifoldImpl> make_manifold_impl(const ManifoldDescriptor& d) {
  d.validate();
  switch (d.kind) {
    case ManifoldKind::kStiefel:
      return std::make_unique<StiefelManifold>(
          d.stiefel_metric.value_or(StiefelMetric::kEuclidean),
          d.stiefel_retraction.value_or(StiefelRetraction::kSvd));
    case ManifoldKind::kHermitian:
      return std::make_unique<HermitianManifold>();
    case ManifoldKind::kHpd:
      return std::make_unique<HpdManifold>(
          d.hpd_metric.value_or(HpdMetric::kLogCholesky));
    case ManifoldKind::kDensity:
      return std::make_unique<DensityManifold>();
    case ManifoldKind::kChoi:
      return std::make_unique<ChoiManifold>();
    case ManifoldKind::kPovm:
      return std::make_unique<PovmManifold>();
  }
  throw ConfigError("unknown manifold kind");
}

Manifold::Manifold(ManifoldDescriptor descriptor)
    : descriptor_(std::move(descriptor)), impl_(make_manifold_impl(descriptor_)) {}

Manifold::ElementLayout Manifold::layout(const Shape& shape) const {
  const std::size_t er = impl_->element_rank();
  if (shape.size() < er) {
    throw ShapeError(name() + " elements need " + std::to_string(er) +
                     " trailing axes, got shape " + shape_to_string(shape));
  }
  const std::span<const std::size_t> trailing(shape.end() - er, shape.end());
  impl_->validate_element_shape(trailing);
  ElementLayout l;
  l.copies = shape_size(std::span<const std::size_t>(shape.begin(), shape.end() - er));
  l.cols = static_cast<Eigen::Index>(shape.back());
  l.rows = static_cast<Eigen::Index>(shape_size(trailing) / shape.back());
  return l;
}

std::size_t Manifold::num_copies(const Shape& shape) const {
  return layout(shape).copies;
}

Matrix Manifold::element(const ComplexTensor& t, std::size_t copy) const {
  const ElementLayout l = layout(t.shape());
  if (copy >= l.copies) throw ShapeError("element index out of range");
  return Eigen::Map<const RowMajorMatrix>(t.data().data() + copy * l.rows * l.cols,
                                          l.rows, l.cols);
}

void Manifold::set_element(ComplexTensor& t, std::size_t copy, const Matrix& m) const {
  const ElementLayout l = layout(t.shape());
  if (copy >= l.copies) throw ShapeError("element index out of range");
  if (m.rows() != l.rows || m.cols() != l.cols) {
    throw ShapeError("element shape mismatch");
  }
  Eigen::Map<RowMajorMatrix>(t.data().data() + copy * l.rows * l.cols, l.rows,
                             l.cols) = m;
}

namespace {

void require_same_shape(const ComplexTensor& a, const ComplexTensor& b,
                        const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " +
                     shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
}

}  // namespace

void Manifold::require_on_manifold(const ComplexTensor& u, const char* op) const {
  const ResidualReport r = check_point(u);
  if (!r.passes()) {
    throw PreconditionError(std::string(op) + ": point is off the " + name() +
                            " manifold (" + r.summary() + ")");
  }
}

ComplexTensor Manifold::random(const Shape& shape, Rng& rng) const {
  const ElementLayout l = layout(shape);
  ComplexTensor out(shape);
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c, impl_->random_point(l.rows, l.cols, rng));
  }
  return out;
}

ComplexTensor Manifold::random_tangent(const ComplexTensor& u, Rng& rng) const {
  require_on_manifold(u, "random_tangent");
  const ElementLayout l = layout(u.shape());
  ComplexTensor out(u.shape());
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c, impl_->random_tangent(element(u, c), rng));
  }
  return out;
}

ComplexTensor Manifold::proj(const ComplexTensor& u, const ComplexTensor& w) const {
  require_same_shape(u, w, "proj");
  require_on_manifold(u, "proj");
  const ElementLayout l = layout(u.shape());
  ComplexTensor out(u.shape());
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c, impl_->proj(element(u, c), element(w, c)));
  }
  return out;
}

std::vector<double> Manifold::inner(const ComplexTensor& u, const ComplexTensor& v,
                                    const ComplexTensor& w) const {
  require_same_shape(u, v, "inner");
  require_same_shape(u, w, "inner");
  const ElementLayout l = layout(u.shape());
  std::vector<double> out(l.copies);
  for (std::size_t c = 0; c < l.copies; ++c) {
    out[c] = impl_->inner(element(u, c), element(v, c), element(w, c));
  }
  return out;
}

ComplexTensor Manifold::egrad_to_rgrad(const ComplexTensor& u,
                                       const ComplexTensor& e) const {
  require_same_shape(u, e, "egrad_to_rgrad");
  const ElementLayout l = layout(u.shape());
  ComplexTensor out(u.shape());
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c, impl_->egrad_to_rgrad(element(u, c), element(e, c)));
  }
  return out;
}

ComplexTensor Manifold::retraction(const ComplexTensor& u,
                                   const ComplexTensor& v) const {
  require_same_shape(u, v, "retraction");
  const ElementLayout l = layout(u.shape());
  ComplexTensor out(u.shape());
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c, impl_->retraction(element(u, c), element(v, c)));
  }
  return out;
}

ComplexTensor Manifold::vector_transport(const ComplexTensor& u,
                                         const ComplexTensor& v,
                                         const ComplexTensor& w) const {
  require_same_shape(u, v, "vector_transport");
  require_same_shape(u, w, "vector_transport");
  const ElementLayout l = layout(u.shape());
  ComplexTensor out(u.shape());
  for (std::size_t c = 0; c < l.copies; ++c) {
    set_element(out, c,
                impl_->vector_transport(element(u, c), element(v, c), element(w, c)));
  }
  return out;
}

ResidualReport Manifold::check_point(const ComplexTensor& u) const {
  const ElementLayout l = layout(u.shape());
  ResidualReport report;
  for (std::size_t c = 0; c < l.copies; ++c) {
    report.merge_worst(impl_->check_point(element(u, c)));
  }
  return report;
}

ResidualReport Manifold::check_tangent(const ComplexTensor& u,
                                       const ComplexTensor& v) const {
  require_same_shape(u, v, "check_tangent");
  const ElementLayout l = layout(u.shape());
  ResidualReport report;
  for (std::size_t c = 0; c < l.copies; ++c) {
    report.merge_worst(impl_->check_tangent(element(u, c), element(v, c)));
  }
  return report;
}

ComplexTensor Manifold::scale_copies(const ComplexTensor& v,
                                     std::span<const double> factors) const {
  const ElementLayout l = layout(v.shape());
  if (factors.size() != l.copies) {
    throw ShapeError("scale_copies: expected " + std::to_string(l.copies) +
                     " factors, got " + std::to_string(factors.size()));
  }
  ComplexTensor out = v;
  const std::size_t block = static_cast<std::size_t>(l.rows * l.cols);
  for (std::size_t c = 0; c < l.copies; ++c) {
    for (std::size_t i = 0; i < block; ++i) out[c * block + i] *= factors[c];
  }
  return out;
}

}  // namespace qmanopt
