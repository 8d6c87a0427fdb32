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

#include "qmanopt/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>

#include "qmanopt/apps/experiments.hpp"
#include "qmanopt/diagnostics.hpp"
#include "qmanopt/errors.hpp"
#include "qmanopt/io.hpp"
#include "qmanopt/manifold.hpp"

namespace qmanopt {
namespace {

using Json = nlohmann::ordered_json;

bool timing_disabled_by_env() {
  const char* env = std::getenv("QMANOPT_NO_TIMING");
  return env != nullptr && *env != '\0' && std::string(env) != "0";
}

struct GateOptions {
  std::uint64_t seed = 0;
  double lr = 0.2;
  std::uint64_t iters = 2000;
  std::string target = "random";
  std::string target_file;
  std::string out = "gate_decomp_trace.csv";
  std::string save_point;
  double tol = 1e-4;
  bool amsgrad = true;
  bool no_timing = false;
};

struct TomoOptions {
  std::size_t qubits = 1;
  std::size_t rank = 2;
  std::size_t samples = 100000;
  bool exact_probs = false;
  std::size_t states = 64;
  double lr = 0.07;
  std::uint64_t iters = 1000;
  std::uint64_t seed = 0;
  std::string out = "channel_tomo_trace.csv";
  std::string choi_out = "channel_tomo_choi.json";
  std::optional<double> tol;
  bool no_timing = false;
};

struct CheckOptions {
  std::string manifold = "all";
  ManifoldSizes sizes{4, 2, 2, 3};
  int trials = 100;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchOptions {
  std::string manifold = "stiefel";
  std::vector<std::size_t> sizes{16, 32, 64};
  int reps = 10;
  std::uint64_t seed = 0;
};

int cmd_gate_decomp(const GateOptions& o, std::ostream& out) {
  GateDecompositionConfig config;
  config.seed = o.seed;
  config.learning_rate = o.lr;
  config.iterations = o.iters;
  config.amsgrad = o.amsgrad;
  config.timing = !(o.no_timing || timing_disabled_by_env());
  if (o.target == "file") {
    if (o.target_file.empty()) throw ConfigError("--target file requires --target-file");
    const ComplexTensor t = read_tensor_file(o.target_file);
    if (t.rank() != 2) {
      throw ConfigError("target tensor must have shape (4, 4), got " +
                        shape_to_string(t.shape()));
    }
    config.target = t.to_matrix();
  } else if (o.target != "random") {
    throw ConfigError("--target must be 'random' or 'file'");
  }
  const GateDecompositionResult result = run_gate_decomposition(config);
  write_trace_file(o.out, result.trace);
  if (!o.save_point.empty()) write_tensor_file(o.save_point, result.vars);
  const bool passed = result.final_distance < o.tol;
  Json j;
  j["record"] = "summary";
  j["command"] = "gate-decomp";
  j["seed"] = o.seed;
  j["iterations"] = o.iters;
  j["final_distance"] = result.final_distance;
  j["tolerance"] = o.tol;
  j["passed"] = passed;
  out << j.dump() << '\n';
  return passed ? kExitSuccess : kExitToleranceUnmet;
}

int cmd_channel_tomo(const TomoOptions& o, std::ostream& out) {
  ChannelTomographyConfig config;
  config.qubits = o.qubits;
  config.rank = o.rank;
  config.samples = o.samples;
  config.exact_probabilities = o.exact_probs;
  config.states = o.states;
  config.learning_rate = o.lr;
  config.iterations = o.iters;
  config.seed = o.seed;
  config.timing = !(o.no_timing || timing_disabled_by_env());
  const double tol = o.tol.value_or(o.exact_probs ? 0.02 : 0.1);
  const ChannelTomographyResult result = run_channel_tomography(config);
  write_trace_file(o.out, result.trace);
  write_tensor_file(o.choi_out, ComplexTensor::from_matrix(result.estimate_choi));
  const bool passed = result.final_distance < tol;
  Json j;
  j["record"] = "summary";
  j["command"] = "channel-tomo";
  j["seed"] = o.seed;
  j["qubits"] = o.qubits;
  j["rank"] = o.rank;
  j["mode"] = o.exact_probs ? "exact" : "sampled";
  j["iterations"] = o.iters;
  j["final_jamiolkowski_distance"] = result.final_distance;
  j["tolerance"] = tol;
  j["passed"] = passed;
  out << j.dump() << '\n';
  return passed ? kExitSuccess : kExitToleranceUnmet;
}

std::vector<ManifoldDescriptor> select_variants(const std::string& name) {
  std::vector<ManifoldDescriptor> out;
  if (name == "all") return ManifoldDescriptor::all_variants();
  const ManifoldKind kind = parse_manifold_kind(name);
  for (const ManifoldDescriptor& d : ManifoldDescriptor::all_variants()) {
    if (d.kind == kind) out.push_back(d);
  }
  return out;
}

int cmd_manifold_check(const CheckOptions& o, std::ostream& out) {
  if (o.trials < 1) throw ConfigError("--trials must be at least 1");
  const std::vector<ManifoldDescriptor> variants = select_variants(o.manifold);
  for (const ManifoldDescriptor& d : variants) {
    Manifold(d).num_copies(element_shape(d.kind, o.sizes));
  }
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + o.out + " for writing");
  }
  std::ostream& sink = o.out.empty() ? out : file;
  std::size_t total = 0;
  std::size_t failed = 0;
  for (const ManifoldDescriptor& d : variants) {
    for (const CheckReport& r : run_manifold_suite(Manifold(d), o.sizes, o.trials, o.seed)) {
      sink << r.to_json() << '\n';
      ++total;
      if (!r.passed) ++failed;
    }
  }
  Json j;
  j["record"] = "summary";
  j["command"] = "manifold-check";
  j["manifold"] = o.manifold;
  j["checks"] = total;
  j["failed"] = failed;
  j["passed"] = failed == 0;
  sink << j.dump() << '\n';
  if (!sink) throw IoError("failed writing the report");
  return failed == 0 ? kExitSuccess : kExitToleranceUnmet;
}

Shape bench_shape(ManifoldKind kind, std::size_t n) {
  const std::size_t half = std::max<std::size_t>(1, n / 2);
  return element_shape(kind, ManifoldSizes{n, half, half, 4});
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  if (o.reps < 1) throw ConfigError("--reps must be at least 1");
  if (o.sizes.empty()) throw ConfigError("--sizes must not be empty");
  const std::vector<ManifoldDescriptor> variants =
      o.manifold == "all" ? std::vector<ManifoldDescriptor>{
                                ManifoldDescriptor::stiefel(), ManifoldDescriptor::hermitian(),
                                ManifoldDescriptor::hpd(), ManifoldDescriptor::density(),
                                ManifoldDescriptor::choi(), ManifoldDescriptor::povm()}
                          : std::vector<ManifoldDescriptor>{
                                ManifoldDescriptor::of(parse_manifold_kind(o.manifold))};
  for (const ManifoldDescriptor& d : variants) {
    const Manifold m(d);
    for (std::size_t n : o.sizes) {
      if (n < 2) throw ConfigError("bench sizes must be at least 2");
      const Shape shape = bench_shape(d.kind, n);
      Rng rng(o.seed);
      const ComplexTensor x = m.random(shape, rng);
      const ComplexTensor v = m.random_tangent(x, rng);
      const ComplexTensor w = m.random_tangent(x, rng) * 0.1;
      const ComplexTensor e = rng.complex_gaussian(shape);
      const std::pair<const char*, std::function<void()>> primitives[] = {
          {"proj", [&] { (void)m.proj(x, e); }},
          {"inner", [&] { (void)m.inner(x, v, w); }},
          {"egrad_to_rgrad", [&] { (void)m.egrad_to_rgrad(x, e); }},
          {"retraction", [&] { (void)m.retraction(x, w); }},
          {"vector_transport", [&] { (void)m.vector_transport(x, v, w); }},
      };
      for (const auto& [name, fn] : primitives) {
        const auto start = std::chrono::steady_clock::now();
        for (int r = 0; r < o.reps; ++r) fn();
        const double total = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        Json j;
        j["record"] = "bench";
        j["manifold"] = m.name();
        j["size"] = n;
        j["shape"] = shape_to_string(shape);
        j["primitive"] = name;
        j["reps"] = o.reps;
        j["mean_ms"] = total / o.reps;
        out << j.dump() << '\n';
      }
    }
  }
  return kExitSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const std::uint64_t seed = default_seed(0);
    CLI::App app{"Riemannian optimization on quantum manifolds", "qmanopt"};
    app.require_subcommand(1, 1);

    GateOptions gate;
    gate.seed = seed;
    CLI::App* gate_cmd =
        app.add_subcommand("gate-decomp", "Decompose a two-qubit gate into CNOTs and "
                                          "single-qubit gates");
    gate_cmd->add_option("--seed", gate.seed, "Random seed")->capture_default_str();
    gate_cmd->add_option("--lr", gate.lr, "RAdam learning rate")->capture_default_str();
    gate_cmd->add_option("--iters", gate.iters, "Optimizer steps")->capture_default_str();
    gate_cmd->add_option("--target", gate.target, "random or file")
        ->check(CLI::IsMember({"random", "file"}))
        ->capture_default_str();
    gate_cmd->add_option("--target-file", gate.target_file, "Target unitary tensor file");
    gate_cmd->add_option("--out", gate.out, "Trace CSV path")->capture_default_str();
    gate_cmd->add_option("--save-point", gate.save_point, "Write the final gates here");
    gate_cmd->add_option("--tol", gate.tol, "Frobenius distance tolerance")
        ->capture_default_str();
    gate_cmd->add_flag("--amsgrad,!--no-amsgrad", gate.amsgrad,
                       "Running maximum of the second moment (default on)");
    gate_cmd->add_flag("--no-timing", gate.no_timing, "Write 0 as wall_time_ms");

    TomoOptions tomo;
    tomo.seed = seed;
    CLI::App* tomo_cmd = app.add_subcommand("channel-tomo", "Maximum-likelihood channel "
                                                            "tomography");
    tomo_cmd->add_option("--qubits", tomo.qubits, "Number of qubits")->capture_default_str();
    tomo_cmd->add_option("--rank", tomo.rank, "Kraus rank")->capture_default_str();
    tomo_cmd->add_option("--samples", tomo.samples, "Measurement outcomes")
        ->capture_default_str();
    tomo_cmd->add_flag("--exact-probs", tomo.exact_probs,
                       "Use analytic outcome probabilities");
    tomo_cmd->add_option("--states", tomo.states, "Input states with --exact-probs")
        ->capture_default_str();
    tomo_cmd->add_option("--lr", tomo.lr, "RAdam learning rate")->capture_default_str();
    tomo_cmd->add_option("--iters", tomo.iters, "Optimizer steps")->capture_default_str();
    tomo_cmd->add_option("--seed", tomo.seed, "Random seed")->capture_default_str();
    tomo_cmd->add_option("--out", tomo.out, "Trace CSV path")->capture_default_str();
    tomo_cmd->add_option("--choi-out", tomo.choi_out, "Estimated Choi matrix path")
        ->capture_default_str();
    tomo_cmd->add_option("--tol", tomo.tol,
                         "Jamiolkowski distance tolerance (0.1 sampled, 0.02 exact)");
    tomo_cmd->add_flag("--no-timing", tomo.no_timing, "Write 0 as wall_time_ms");

    CheckOptions check;
    check.seed = seed;
    CLI::App* check_cmd =
        app.add_subcommand("manifold-check", "Run the diagnostics suite");
    check_cmd->add_option("--manifold", check.manifold, "Manifold kind or 'all'")
        ->capture_default_str();
    check_cmd->add_option("--n", check.sizes.n, "Matrix size")->capture_default_str();
    check_cmd->add_option("--p", check.sizes.p, "Stiefel columns")->capture_default_str();
    check_cmd->add_option("--r", check.sizes.r, "Density/Choi rank")->capture_default_str();
    check_cmd->add_option("--m", check.sizes.m, "POVM elements")->capture_default_str();
    check_cmd->add_option("--trials", check.trials, "Trials per check")
        ->capture_default_str();
    check_cmd->add_option("--seed", check.seed, "Random seed")->capture_default_str();
    check_cmd->add_option("--out", check.out, "Report path (default stdout)");

    BenchOptions bench;
    bench.seed = seed;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Time manifold primitives");
    bench_cmd->add_option("--manifold", bench.manifold, "Manifold kind or 'all'")
        ->capture_default_str();
    bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated matrix sizes")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per primitive")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();

    std::vector<const char*> argv{"qmanopt"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitSuccess : kExitConfigError;
    }

    if (gate_cmd->parsed()) return cmd_gate_decomp(gate, out);
    if (tomo_cmd->parsed()) return cmd_channel_tomo(tomo, out);
    if (check_cmd->parsed()) return cmd_manifold_check(check, out);
    return cmd_bench(bench, out);
  } catch (const LikelihoodDegeneracyError& e) {
    err << "likelihood degeneracy: " << e.what() << '\n';
    return kExitDegeneracy;
  } catch (const DegeneracyError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kExitDegeneracy;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace qmanopt
