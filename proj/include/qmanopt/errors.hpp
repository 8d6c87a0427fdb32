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

#include <stdexcept>
#include <string>

namespace qmanopt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or matrix extents incompatible with the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A factorization or geometric primitive hit a rank collapse, a
/// non-positive eigenvalue or a similar numerical degeneracy.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// The estimate assigns (numerically) zero probability to an observed outcome.
class LikelihoodDegeneracyError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

/// An input violates a documented precondition (off-manifold point,
/// non-Hermitian matrix where one is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid options, flags or manifold descriptors.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Internal invariants broken beyond rounding (e.g. outcome probabilities
/// that do not sum to one).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmanopt
