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

// First-order Riemannian optimizers: SGD with momentum and Adam (optionally
// AMSGrad). One step is
//   1. m~ = beta m + (1 - beta) grad_R f(x)
//   2. x' = R_x(d) with d = -lr m~ (Adam: adaptive per-copy scaling)
//   3. m' = transport of m~ along d to x'
// starting from m_0 = 0.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "qmanopt/manifold.hpp"

namespace qmanopt {

enum class Objective { kMinimize, kMaximize };

struct RsgdConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  Objective objective = Objective::kMinimize;

  void validate() const;
};

struct RadamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool amsgrad = false;
  Objective objective = Objective::kMinimize;

  void validate() const;
};

/// Per-variable optimizer state. An empty momentum tensor stands for the
/// zero vector.
struct OptimizerState {
  std::uint64_t step_count = 0;
  ComplexTensor momentum;
  /// Adam: one scalar per manifold copy, from the manifold inner product.
  std::vector<double> second_moment;
  /// AMSGrad: running maximum of the bias-corrected second moment.
  std::vector<double> second_moment_max;
};

struct StepResult {
  ComplexTensor point;
  OptimizerState state;
};

StepResult rsgd_step(const Manifold& manifold, const RsgdConfig& config,
                     const OptimizerState& state, const ComplexTensor& x,
                     const ComplexTensor& egrad);

/// Adam with a scalar second moment per manifold copy, so the update
/// direction stays tangent. Uses t = state.step_count + 1 for bias correction.
StepResult radam_step(const Manifold& manifold, const RadamConfig& config,
                      const OptimizerState& state, const ComplexTensor& x,
                      const ComplexTensor& egrad);

struct GradientPair {
  const ComplexTensor* gradient;
  ComplexTensor* variable;
};

/// Stateful optimizer serving every variable of one manifold descriptor.
/// State is keyed by variable address, so variables must not move while the
/// optimizer is in use. Several optimizers can be combined to optimize over a
/// Cartesian product of different manifolds.
class RiemannianOptimizer {
 public:
  explicit RiemannianOptimizer(Manifold manifold) : manifold_(std::move(manifold)) {}
  virtual ~RiemannianOptimizer() = default;

  /// Updates each variable in place. Throws ConfigError on shape or kind
  /// mismatch; an empty list is a no-op.
  void apply_gradients(std::span<const GradientPair> pairs);
  void apply_gradients(std::initializer_list<GradientPair> pairs) {
    apply_gradients(std::span<const GradientPair>(pairs.begin(), pairs.size()));
  }

  const Manifold& manifold() const { return manifold_; }
  /// Number of apply_gradients calls that updated at least one variable.
  std::uint64_t iterations() const { return iterations_; }
  /// nullptr if the variable was never updated.
  const OptimizerState* state_for(const ComplexTensor& variable) const;

 protected:
  virtual StepResult step(const OptimizerState& state, const ComplexTensor& x,
                          const ComplexTensor& egrad) const = 0;

 private:
  Manifold manifold_;
  std::uint64_t iterations_ = 0;
  std::unordered_map<const ComplexTensor*, OptimizerState> states_;
};

class Rsgd final : public RiemannianOptimizer {
 public:
  Rsgd(Manifold manifold, RsgdConfig config);
  const RsgdConfig& config() const { return config_; }

 protected:
  StepResult step(const OptimizerState& state, const ComplexTensor& x,
                  const ComplexTensor& egrad) const override;

 private:
  RsgdConfig config_;
};

class Radam final : public RiemannianOptimizer {
 public:
  Radam(Manifold manifold, RadamConfig config);
  const RadamConfig& config() const { return config_; }

 protected:
  StepResult step(const OptimizerState& state, const ComplexTensor& x,
                  const ComplexTensor& egrad) const override;

 private:
  RadamConfig config_;
};

}  // namespace qmanopt
