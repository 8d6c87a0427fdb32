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

// End-to-end optimization runs behind the gate-decomp and channel-tomo
// commands.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qmanopt/apps/gate_decomposition.hpp"
#include "qmanopt/apps/tomography.hpp"

namespace qmanopt {

/// One iteration of a convergence trace; row i describes the iterate after
/// i optimizer steps.
struct TraceRow {
  std::uint64_t iteration = 0;
  double loss = 0.0;
  double constraint_residual = 0.0;
  std::optional<double> metric;
  double wall_time_ms = 0.0;
};

struct GateDecompositionConfig {
  std::uint64_t seed = 0;
  double learning_rate = 0.2;
  /// Keeps the running maximum of the second moment, so steps shrink with
  /// the gradient once the decomposition is found.
  bool amsgrad = true;
  std::uint64_t iterations = 2000;
  /// Haar-random target drawn from the seed when unset.
  std::optional<Matrix> target;
  /// When false every wall_time_ms is written as 0.
  bool timing = true;
};

struct GateDecompositionResult {
  Matrix target;
  ComplexTensor vars;
  std::vector<TraceRow> trace;
  double final_distance = 0.0;
};

/// Throws ConfigError when the target is not a 4x4 unitary within 1e-8.
void validate_gate_target(const Matrix& target);

GateDecompositionResult run_gate_decomposition(const GateDecompositionConfig& config);

struct ChannelTomographyConfig {
  std::size_t qubits = 1;
  std::size_t rank = 2;
  std::size_t samples = 100000;
  /// Optimize the expected likelihood over `states` random inputs instead of
  /// sampled outcomes.
  bool exact_probabilities = false;
  std::size_t states = 64;
  double learning_rate = 0.07;
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 0;
  bool timing = true;
  /// Called after every trace row is recorded.
  std::function<void(const TraceRow&)> on_row;
};

struct ChannelTomographyResult {
  Channel truth;
  ComplexTensor estimate;
  Matrix estimate_choi;
  std::vector<TraceRow> trace;
  double final_distance = 0.0;
};

/// Throws ConfigError on invalid settings and LikelihoodDegeneracyError when
/// the estimate assigns zero probability to an observed outcome.
ChannelTomographyResult run_channel_tomography(const ChannelTomographyConfig& config);

}  // namespace qmanopt
