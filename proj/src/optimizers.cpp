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

#include "qmanopt/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "qmanopt/errors.hpp"

namespace qmanopt {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1), got " +
                      std::to_string(v));
  }
}

ComplexTensor oriented_gradient(const ComplexTensor& egrad, Objective objective) {
  return objective == Objective::kMinimize ? egrad : -1.0 * egrad;
}

}  // namespace

void RsgdConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  require_unit_interval(momentum, "momentum");
}

void RadamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  require_unit_interval(beta1, "beta1");
  require_unit_interval(beta2, "beta2");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
}

StepResult rsgd_step(const Manifold& manifold, const RsgdConfig& config,
                     const OptimizerState& state, const ComplexTensor& x,
                     const ComplexTensor& egrad) {
  config.validate();
  const ComplexTensor rgrad =
      manifold.egrad_to_rgrad(x, oriented_gradient(egrad, config.objective));
  ComplexTensor m = (1.0 - config.momentum) * rgrad;
  if (!state.momentum.empty()) m += config.momentum * state.momentum;

  const ComplexTensor d = -config.learning_rate * m;
  StepResult out;
  out.point = manifold.retraction(x, d);
  out.state.step_count = state.step_count + 1;
  out.state.momentum = manifold.vector_transport(x, m, d);
  return out;
}

StepResult radam_step(const Manifold& manifold, const RadamConfig& config,
                      const OptimizerState& state, const ComplexTensor& x,
                      const ComplexTensor& egrad) {
  config.validate();
  const std::size_t copies = manifold.num_copies(x.shape());
  const ComplexTensor rgrad =
      manifold.egrad_to_rgrad(x, oriented_gradient(egrad, config.objective));
  const std::vector<double> sq = manifold.inner(x, rgrad, rgrad);

  StepResult out;
  out.state.step_count = state.step_count + 1;
  const double t = static_cast<double>(out.state.step_count);

  ComplexTensor m = (1.0 - config.beta1) * rgrad;
  if (!state.momentum.empty()) m += config.beta1 * state.momentum;

  std::vector<double>& v = out.state.second_moment;
  v = state.second_moment.empty() ? std::vector<double>(copies, 0.0)
                                  : state.second_moment;
  if (v.size() != copies) throw ConfigError("radam: second moment size mismatch");
  for (std::size_t c = 0; c < copies; ++c) {
    v[c] = config.beta2 * v[c] + (1.0 - config.beta2) * sq[c];
  }

  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);
  std::vector<double> vhat(copies);
  for (std::size_t c = 0; c < copies; ++c) vhat[c] = v[c] / bias2;
  if (config.amsgrad) {
    std::vector<double>& vmax = out.state.second_moment_max;
    vmax = state.second_moment_max.empty() ? std::vector<double>(copies, 0.0)
                                           : state.second_moment_max;
    for (std::size_t c = 0; c < copies; ++c) {
      vmax[c] = std::max(vmax[c], vhat[c]);
      vhat[c] = vmax[c];
    }
  }

  std::vector<double> scale(copies);
  for (std::size_t c = 0; c < copies; ++c) {
    scale[c] = -config.learning_rate / (bias1 * (std::sqrt(vhat[c]) + config.eps));
  }
  const ComplexTensor d = manifold.scale_copies(m, scale);
  out.point = manifold.retraction(x, d);
  out.state.momentum = manifold.vector_transport(x, m, d);
  return out;
}

// ---------------------------------------------------------------------------

void RiemannianOptimizer::apply_gradients(std::span<const GradientPair> pairs) {
  if (pairs.empty()) return;
  for (const GradientPair& p : pairs) {
    if (p.gradient == nullptr || p.variable == nullptr) {
      throw ConfigError("apply_gradients: null gradient or variable");
    }
    if (p.gradient->shape() != p.variable->shape()) {
      throw ConfigError("apply_gradients: gradient shape " +
                        shape_to_string(p.gradient->shape()) +
                        " does not match variable shape " +
                        shape_to_string(p.variable->shape()));
    }
    try {
      manifold_.num_copies(p.variable->shape());
    } catch (const ShapeError& e) {
      throw ConfigError(std::string("apply_gradients: ") + e.what());
    }
    auto it = states_.find(p.variable);
    if (it != states_.end() && !it->second.momentum.empty() &&
        it->second.momentum.shape() != p.variable->shape()) {
      throw ConfigError("apply_gradients: variable changed shape between steps");
    }
  }

  // One shared step count per call, used for Adam's bias correction.
  const std::uint64_t t = iterations_;
  ++iterations_;
  for (const GradientPair& p : pairs) {
    OptimizerState& s = states_[p.variable];
    s.step_count = t;
    StepResult r = step(s, *p.variable, *p.gradient);
    *p.variable = std::move(r.point);
    s = std::move(r.state);
  }
}

const OptimizerState* RiemannianOptimizer::state_for(const ComplexTensor& variable) const {
  auto it = states_.find(&variable);
  return it == states_.end() ? nullptr : &it->second;
}

Rsgd::Rsgd(Manifold manifold, RsgdConfig config)
    : RiemannianOptimizer(std::move(manifold)), config_(config) {
  config_.validate();
}

StepResult Rsgd::step(const OptimizerState& state, const ComplexTensor& x,
                      const ComplexTensor& egrad) const {
  return rsgd_step(manifold(), config_, state, x, egrad);
}

Radam::Radam(Manifold manifold, RadamConfig config)
    : RiemannianOptimizer(std::move(manifold)), config_(config) {
  config_.validate();
}

StepResult Radam::step(const OptimizerState& state, const ComplexTensor& x,
                       const ComplexTensor& egrad) const {
  return radam_step(manifold(), config_, state, x, egrad);
}

}  // namespace qmanopt
