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

// File artifacts: tensors as {"shape", "re", "im"} JSON text with
// round-trip-safe 17-digit decimals, and CSV convergence traces.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmanopt/apps/experiments.hpp"
#include "qmanopt/tensor.hpp"

namespace qmanopt {

std::string serialize_tensor(const ComplexTensor& t);
/// Throws IoError on malformed text, mismatched lengths or non-finite entries.
ComplexTensor parse_tensor(const std::string& text);

void write_tensor_file(const std::filesystem::path& path, const ComplexTensor& t);
ComplexTensor read_tensor_file(const std::filesystem::path& path);

inline constexpr const char* kTraceHeader =
    "iteration,loss,constraint_residual,metric,wall_time_ms";

/// One CSV line without the trailing newline; an unset metric is empty.
std::string format_trace_row(const TraceRow& row);
void write_trace(std::ostream& out, const std::vector<TraceRow>& rows);
void write_trace_file(const std::filesystem::path& path, const std::vector<TraceRow>& rows);
/// Parses a file written by write_trace_file.
std::vector<TraceRow> read_trace_file(const std::filesystem::path& path);

/// Shortest "%.17g" rendering used by every text artifact.
std::string format_double(double v);

}  // namespace qmanopt
