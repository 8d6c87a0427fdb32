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

#include "qmanopt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qmanopt/errors.hpp"

namespace qmanopt {

std::size_t shape_size(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_to_string(std::span<const std::size_t> shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ", ";
    os << shape[i];
  }
  os << ')';
  return os.str();
}

namespace {

void require_positive_extents(const Shape& shape) {
  if (std::any_of(shape.begin(), shape.end(),
                  [](std::size_t e) { return e == 0; })) {
    throw ShapeError("tensor extents must be positive, got " +
                     shape_to_string(shape));
  }
}

}  // namespace

ComplexTensor::ComplexTensor(Shape shape)
    : shape_(std::move(shape)), data_(shape_size(shape_)) {
  require_positive_extents(shape_);
}

ComplexTensor::ComplexTensor(Shape shape, std::vector<Complex> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  require_positive_extents(shape_);
  if (data_.size() != shape_size(shape_)) {
    throw ShapeError("tensor of shape " + shape_to_string(shape_) +
                     " needs " + std::to_string(shape_size(shape_)) +
                     " entries, got " + std::to_string(data_.size()));
  }
}

ComplexTensor ComplexTensor::from_matrix(const Matrix& m) {
  ComplexTensor t({static_cast<std::size_t>(m.rows()),
                   static_cast<std::size_t>(m.cols())});
  Eigen::Map<RowMajorMatrix>(t.data_.data(), m.rows(), m.cols()) = m;
  return t;
}

std::size_t ComplexTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw ShapeError("index rank " + std::to_string(index.size()) +
                     " does not match tensor rank " +
                     std::to_string(shape_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (index[a] >= shape_[a]) {
      throw ShapeError("index out of range for shape " +
                       shape_to_string(shape_));
    }
    flat = flat * shape_[a] + index[a];
  }
  return flat;
}

Complex& ComplexTensor::at(std::span<const std::size_t> index) {
  return data_[flat_index(index)];
}

const Complex& ComplexTensor::at(std::span<const std::size_t> index) const {
  return data_[flat_index(index)];
}

ComplexTensor ComplexTensor::reshaped(Shape new_shape) const {
  if (shape_size(new_shape) != data_.size()) {
    throw ShapeError("cannot reshape " + shape_to_string(shape_) + " to " +
                     shape_to_string(new_shape));
  }
  return ComplexTensor(std::move(new_shape), data_);
}

ComplexTensor ComplexTensor::permuted(std::span<const std::size_t> axes) const {
  const std::size_t r = shape_.size();
  if (axes.size() != r) throw ShapeError("permutation rank mismatch");
  std::vector<bool> seen(r, false);
  for (std::size_t a : axes) {
    if (a >= r || seen[a]) throw ShapeError("invalid axis permutation");
    seen[a] = true;
  }

  Shape out_shape(r);
  for (std::size_t a = 0; a < r; ++a) out_shape[a] = shape_[axes[a]];

  // Strides of the source, read in output-axis order.
  std::vector<std::size_t> src_stride(r, 1);
  for (std::size_t a = r; a-- > 1;) src_stride[a - 1] = src_stride[a] * shape_[a];
  std::vector<std::size_t> stride(r);
  for (std::size_t a = 0; a < r; ++a) stride[a] = src_stride[axes[a]];

  ComplexTensor out(out_shape);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t a = 0; a < r; ++a) src += idx[a] * stride[a];
    out.data_[flat] = data_[src];
    for (std::size_t a = r; a-- > 0;) {
      if (++idx[a] < out_shape[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

Matrix ComplexTensor::to_matrix() const {
  if (shape_.size() != 2) {
    throw ShapeError("to_matrix needs a rank-2 tensor, got " +
                     shape_to_string(shape_));
  }
  return Eigen::Map<const RowMajorMatrix>(data_.data(), shape_[0], shape_[1]);
}

bool ComplexTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexTensor::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

void ComplexTensor::require_same_shape(const ComplexTensor& other) const {
  if (shape_ != other.shape_) {
    throw ShapeError("shape mismatch: " + shape_to_string(shape_) + " vs " +
                     shape_to_string(other.shape_));
  }
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(double s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape() != b.shape()) throw ShapeError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace qmanopt
