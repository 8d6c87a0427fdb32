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

// Uniform manifold interface.
//
// Gradient convention: the Euclidean gradient E of a real function f at a
// complex point X is the tensor with f(X + d) = f(X) + Re Tr(E^† d) + O(|d|^2)
// for unconstrained complex d. Every loss in the library and every
// egrad_to_rgrad formula uses this convention.
//
// Tangent vectors live in ambient coordinates (same shape as the point). For
// the quotient kinds (density, choi, povm) they are horizontal lifts and
// `proj` is the projection onto the horizontal space.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmanopt/random.hpp"
#include "qmanopt/tensor.hpp"

namespace qmanopt {

enum class ManifoldKind { kStiefel, kHermitian, kHpd, kDensity, kChoi, kPovm };
enum class StiefelMetric { kEuclidean, kCanonical };
enum class StiefelRetraction { kSvd, kQr, kCayley };
enum class HpdMetric { kLogCholesky, kLogEuclidean };

std::string_view to_string(ManifoldKind kind);
std::string_view to_string(StiefelMetric metric);
std::string_view to_string(StiefelRetraction retraction);
std::string_view to_string(HpdMetric metric);

/// Throws ConfigError for unknown names.
ManifoldKind parse_manifold_kind(std::string_view name);

inline constexpr ManifoldKind kAllManifoldKinds[] = {
    ManifoldKind::kStiefel, ManifoldKind::kHermitian, ManifoldKind::kHpd,
    ManifoldKind::kDensity, ManifoldKind::kChoi,      ManifoldKind::kPovm};

/// A manifold kind plus its geometry options. Options that do not apply to
/// the kind must stay unset; `validate` enforces this.
struct ManifoldDescriptor {
  ManifoldKind kind = ManifoldKind::kStiefel;
  std::optional<StiefelMetric> stiefel_metric;
  std::optional<StiefelRetraction> stiefel_retraction;
  std::optional<HpdMetric> hpd_metric;

  static ManifoldDescriptor stiefel(
      StiefelMetric metric = StiefelMetric::kEuclidean,
      StiefelRetraction retraction = StiefelRetraction::kSvd);
  static ManifoldDescriptor hermitian();
  static ManifoldDescriptor hpd(HpdMetric metric = HpdMetric::kLogCholesky);
  static ManifoldDescriptor density();
  static ManifoldDescriptor choi();
  static ManifoldDescriptor povm();

  /// Default options for a kind.
  static ManifoldDescriptor of(ManifoldKind kind);

  /// Every metric/retraction combination the library offers.
  static std::vector<ManifoldDescriptor> all_variants();

  void validate() const;
  bool is_quotient() const;
  /// e.g. "stiefel[canonical,cayley]" or "density".
  std::string name() const;

  bool operator==(const ManifoldDescriptor&) const = default;
};

struct ResidualEntry {
  std::string name;
  double value = 0.0;
};

/// A quantity that must stay strictly above `floor` (positivity, rank).
struct MarginEntry {
  std::string name;
  double value = 0.0;
  double floor = 0.0;
};

/// Named constraint residuals of a point or tangent vector. Never thrown;
/// callers decide what to do with a failing report.
struct ResidualReport {
  static constexpr double kPassTolerance = 1e-8;

  std::vector<ResidualEntry> residuals;
  std::vector<MarginEntry> margins;

  bool passes(double tolerance = kPassTolerance) const;
  double max_residual() const;
  /// Throws std::out_of_range when no entry has this name.
  double residual(std::string_view name) const;
  double margin(std::string_view name) const;

  /// Keeps the worst value per entry name (max residual, min margin).
  void merge_worst(const ResidualReport& other);
  std::string summary() const;
};

/// Geometry of a single manifold element. An element is stored as a matrix:
/// the trailing two axes of the tensor, or for POVMs the (m, n, n) block stack
/// viewed as an (m n) x n matrix.
class ManifoldImpl {
 public:
  virtual ~ManifoldImpl() = default;

  /// Number of trailing tensor axes forming one element.
  virtual std::size_t element_rank() const { return 2; }
  /// Throws ShapeError when the trailing extents are invalid for the kind.
  virtual void validate_element_shape(std::span<const std::size_t> trailing) const = 0;

  virtual Matrix random_point(Eigen::Index rows, Eigen::Index cols, Rng& rng) const = 0;
  virtual Matrix random_tangent(const Matrix& u, Rng& rng) const;
  virtual Matrix proj(const Matrix& u, const Matrix& w) const = 0;
  virtual double inner(const Matrix& u, const Matrix& v, const Matrix& w) const = 0;
  virtual Matrix egrad_to_rgrad(const Matrix& u, const Matrix& e) const = 0;
  virtual Matrix retraction(const Matrix& u, const Matrix& v) const = 0;
  virtual Matrix vector_transport(const Matrix& u, const Matrix& v,
                                  const Matrix& w) const = 0;
  virtual ResidualReport check_point(const Matrix& u) const = 0;
  virtual ResidualReport check_tangent(const Matrix& u, const Matrix& v) const = 0;
};

std::unique_ptr<ManifoldImpl> make_manifold_impl(const ManifoldDescriptor& d);

/// Batched manifold primitives over PointBatch tensors. Every primitive acts
/// independently on each leading-axis copy.
///
/// Immutable after construction and safe to share between threads.
class Manifold {
 public:
  explicit Manifold(ManifoldDescriptor descriptor = ManifoldDescriptor::stiefel());

  const ManifoldDescriptor& descriptor() const { return descriptor_; }
  const ManifoldImpl& impl() const { return *impl_; }
  std::string name() const { return descriptor_.name(); }

  /// Validates the trailing element shape and returns the number of copies.
  std::size_t num_copies(const Shape& shape) const;

  ComplexTensor random(const Shape& shape, Rng& rng) const;
  /// Throws PreconditionError if u is off-manifold by more than 1e-8.
  ComplexTensor random_tangent(const ComplexTensor& u, Rng& rng) const;
  ComplexTensor proj(const ComplexTensor& u, const ComplexTensor& w) const;
  /// One value per copy.
  std::vector<double> inner(const ComplexTensor& u, const ComplexTensor& v,
                            const ComplexTensor& w) const;
  ComplexTensor egrad_to_rgrad(const ComplexTensor& u, const ComplexTensor& e) const;
  ComplexTensor retraction(const ComplexTensor& u, const ComplexTensor& v) const;
  ComplexTensor vector_transport(const ComplexTensor& u, const ComplexTensor& v,
                                 const ComplexTensor& w) const;

  /// Worst residuals over all copies.
  ResidualReport check_point(const ComplexTensor& u) const;
  ResidualReport check_tangent(const ComplexTensor& u, const ComplexTensor& v) const;

  /// Multiplies copy c of v by factors[c].
  ComplexTensor scale_copies(const ComplexTensor& v,
                             std::span<const double> factors) const;

  /// Element view helpers.
  Matrix element(const ComplexTensor& t, std::size_t copy) const;
  void set_element(ComplexTensor& t, std::size_t copy, const Matrix& m) const;

 private:
  struct ElementLayout {
    std::size_t copies;
    Eigen::Index rows;
    Eigen::Index cols;
  };
  ElementLayout layout(const Shape& shape) const;
  void require_on_manifold(const ComplexTensor& u, const char* op) const;

  ManifoldDescriptor descriptor_;
  std::shared_ptr<const ManifoldImpl> impl_;
};

}  // namespace qmanopt
