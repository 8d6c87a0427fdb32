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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmanopt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Shape = std::vector<std::size_t>;

std::size_t shape_size(std::span<const std::size_t> shape);
std::string shape_to_string(std::span<const std::size_t> shape);

/// Dense complex double-precision array with an explicit shape and
/// row-major storage.
///
/// `reshaped` only reinterprets the extents; `permuted` moves data. Every
/// point, tangent vector and gradient in the library is carried by this type,
/// with the trailing axes holding one manifold element and the leading axes
/// enumerating copies of a direct product.
class ComplexTensor {
 public:
  ComplexTensor() = default;

  /// Zero-filled tensor.
  explicit ComplexTensor(Shape shape);

  /// Throws ShapeError when `data.size()` differs from the shape product or
  /// an extent is zero.
  ComplexTensor(Shape shape, std::vector<Complex> data);

  static ComplexTensor from_matrix(const Matrix& m);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }

  /// Multi-index access; bounds are checked.
  Complex& at(std::span<const std::size_t> index);
  const Complex& at(std::span<const std::size_t> index) const;

  ComplexTensor reshaped(Shape new_shape) const;
  ComplexTensor permuted(std::span<const std::size_t> axes) const;

  /// Rank-2 tensors only.
  Matrix to_matrix() const;

  bool all_finite() const;
  double frobenius_norm() const;

  ComplexTensor& operator+=(const ComplexTensor& other);
  ComplexTensor& operator-=(const ComplexTensor& other);
  ComplexTensor& operator*=(double s);
  ComplexTensor& operator*=(Complex s);

  friend ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) {
    return a += b;
  }
  friend ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) {
    return a -= b;
  }
  friend ComplexTensor operator*(double s, ComplexTensor a) { return a *= s; }
  friend ComplexTensor operator*(Complex s, ComplexTensor a) { return a *= s; }
  friend ComplexTensor operator*(ComplexTensor a, double s) { return a *= s; }
  friend ComplexTensor operator*(ComplexTensor a, Complex s) { return a *= s; }

  bool operator==(const ComplexTensor&) const = default;

 private:
  std::size_t flat_index(std::span<const std::size_t> index) const;
  void require_same_shape(const ComplexTensor& other) const;

  Shape shape_;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

}  // namespace qmanopt
