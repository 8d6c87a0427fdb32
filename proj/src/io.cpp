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

#include "qmanopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qmanopt/errors.hpp"

namespace qmanopt {
namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void append_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += values[i] == 0.0 && std::signbit(values[i]) ? "-0.0" : format_double(values[i]);
  }
  out += ']';
}

double parse_double(const std::string& field, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw IoError("malformed " + what + " field '" + field + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string serialize_tensor(const ComplexTensor& t) {
  std::vector<double> re, im;
  re.reserve(t.size());
  im.reserve(t.size());
  for (const Complex& z : t.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  std::string out = "{\"shape\":[";
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(t.shape()[i]);
  }
  out += "],\"re\":";
  append_array(out, re);
  out += ",\"im\":";
  append_array(out, im);
  out += "}\n";
  return out;
}

ComplexTensor parse_tensor(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("tensor file is not valid JSON: ") + e.what());
  }
  try {
    const Shape shape = j.at("shape").get<Shape>();
    const std::vector<double> re = j.at("re").get<std::vector<double>>();
    const std::vector<double> im = j.at("im").get<std::vector<double>>();
    if (shape.empty()) throw IoError("tensor shape is empty");
    const std::size_t n = shape_size(shape);
    if (re.size() != n || im.size() != n) {
      throw IoError("tensor of shape " + shape_to_string(shape) + " needs " +
                    std::to_string(n) + " entries, got re=" + std::to_string(re.size()) +
                    " im=" + std::to_string(im.size()));
    }
    std::vector<Complex> data(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(re[i]) || !std::isfinite(im[i])) {
        throw IoError("tensor entry " + std::to_string(i) + " is not finite");
      }
      data[i] = Complex(re[i], im[i]);
    }
    return ComplexTensor(shape, std::move(data));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("tensor file has wrong structure: ") + e.what());
  } catch (const ShapeError& e) {
    throw IoError(e.what());
  }
}

void write_tensor_file(const std::filesystem::path& path, const ComplexTensor& t) {
  std::ofstream out = open_for_writing(path);
  out << serialize_tensor(t);
  if (!out) throw IoError("failed writing " + path.string());
}

ComplexTensor read_tensor_file(const std::filesystem::path& path) {
  return parse_tensor(read_all(path));
}

std::string format_trace_row(const TraceRow& row) {
  std::string out = std::to_string(row.iteration);
  out += ',';
  out += format_double(row.loss);
  out += ',';
  out += format_double(row.constraint_residual);
  out += ',';
  if (row.metric) out += format_double(*row.metric);
  out += ',';
  out += format_double(row.wall_time_ms);
  return out;
}

void write_trace(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& row : rows) out << format_trace_row(row) << '\n';
}

void write_trace_file(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  std::ofstream out = open_for_writing(path);
  write_trace(out, rows);
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<TraceRow> read_trace_file(const std::filesystem::path& path) {
  std::istringstream in(read_all(path));
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw IoError(path.string() + " does not start with the trace header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 5) throw IoError("trace row '" + line + "' needs 5 fields");
    TraceRow row;
    row.iteration = static_cast<std::uint64_t>(parse_double(fields[0], "iteration"));
    row.loss = parse_double(fields[1], "loss");
    row.constraint_residual = parse_double(fields[2], "constraint_residual");
    if (!fields[3].empty()) row.metric = parse_double(fields[3], "metric");
    row.wall_time_ms = parse_double(fields[4], "wall_time_ms");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qmanopt
