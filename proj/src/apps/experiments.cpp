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

#include "qmanopt/apps/experiments.hpp"

#include <chrono>
#include <string>

#include "qmanopt/errors.hpp"
#include "qmanopt/manifold.hpp"
#include "qmanopt/optimizers.hpp"

namespace qmanopt {
namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled)
      : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_)
        .count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void validate_gate_target(const Matrix& target) {
  if (target.rows() != 4 || target.cols() != 4) {
    throw ConfigError("target must be a 4x4 matrix, got " + std::to_string(target.rows()) +
                      "x" + std::to_string(target.cols()));
  }
  if (!target.allFinite()) throw ConfigError("target has non-finite entries");
  const double residual = (target.adjoint() * target - Matrix::Identity(4, 4)).norm();
  if (!(residual < 1e-8)) {
    throw ConfigError("target is not unitary: ||U^† U - I|| = " + std::to_string(residual));
  }
}

GateDecompositionResult run_gate_decomposition(const GateDecompositionConfig& config) {
  RadamConfig adam;
  adam.learning_rate = config.learning_rate;
  adam.amsgrad = config.amsgrad;
  adam.validate();
  Rng rng(config.seed);
  GateDecompositionResult result;
  result.target = config.target ? *config.target : haar_unitary(4, rng);
  validate_gate_target(result.target);
  Radam optimizer(Manifold(ManifoldDescriptor::stiefel()), adam);
  result.vars = optimizer.manifold().random(kGateDecompositionShape, rng);

  const Stopwatch clock(config.timing);
  for (std::uint64_t it = 0;; ++it) {
    const LossAndGrad lg = gate_decomposition_loss_and_grad(result.vars, result.target);
    TraceRow row;
    row.iteration = it;
    row.loss = lg.loss;
    row.constraint_residual = optimizer.manifold().check_point(result.vars).max_residual();
    row.metric = std::sqrt(lg.loss);
    row.wall_time_ms = clock.elapsed_ms();
    result.trace.push_back(row);
    if (it == config.iterations) break;
    optimizer.apply_gradients({{&lg.egrad, &result.vars}});
  }
  result.final_distance = *result.trace.back().metric;
  return result;
}

ChannelTomographyResult run_channel_tomography(const ChannelTomographyConfig& config) {
  RadamConfig adam;
  adam.learning_rate = config.learning_rate;
  adam.validate();
  if (config.exact_probabilities ? config.states == 0 : config.samples == 0) {
    throw ConfigError("the dataset needs at least one entry");
  }
  Rng master(config.seed);
  const std::uint64_t channel_seed = master.engine()();
  const std::uint64_t data_seed = master.engine()();

  ChannelTomographyResult result;
  result.truth = random_channel(config.qubits, config.rank, channel_seed);
  const TetrahedralPovm povm = build_tetrahedral_povm(config.qubits);
  const TomographyDataset data =
      config.exact_probabilities
          ? exact_probability_dataset(result.truth, config.states, povm, data_seed)
          : sample_dataset(result.truth, config.samples, povm, data_seed);

  const auto d = static_cast<std::size_t>(result.truth.choi.rows());
  Radam optimizer(Manifold(ManifoldDescriptor::choi()), adam);
  result.estimate = optimizer.manifold().random({d, config.rank}, master);

  const Stopwatch clock(config.timing);
  for (std::uint64_t it = 0;; ++it) {
    const LossAndGrad lg = likelihood_loss_and_grad(result.estimate, data, povm);
    const Matrix a = result.estimate.to_matrix();
    result.estimate_choi = a * a.adjoint();
    TraceRow row;
    row.iteration = it;
    row.loss = lg.loss;
    row.constraint_residual =
        optimizer.manifold().check_point(result.estimate).max_residual();
    row.metric =
        jamiolkowski_distance(result.truth.choi, result.estimate_choi, config.qubits);
    row.wall_time_ms = clock.elapsed_ms();
    result.trace.push_back(row);
    if (config.on_row) config.on_row(row);
    if (it == config.iterations) break;
    optimizer.apply_gradients({{&lg.egrad, &result.estimate}});
  }
  result.final_distance = *result.trace.back().metric;
  return result;
}

}  // namespace qmanopt
