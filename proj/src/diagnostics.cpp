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

#include "qmanopt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/optimizers.hpp"

namespace qmanopt {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kConstructionTolerance = 1e-10;
// Fraction of |grad| |v| below which a directional derivative is treated as
// near zero when forming relative errors.
constexpr double kDirectionalFloor = 0.1;

double euclidean_inner(const ComplexTensor& a, const ComplexTensor& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += (std::conj(a[i]) * b[i]).real();
  }
  return acc;
}

double total_inner(const Manifold& m, const ComplexTensor& x, const ComplexTensor& v,
                   const ComplexTensor& w) {
  double acc = 0.0;
  for (double value : m.inner(x, v, w)) acc += value;
  return acc;
}

/// Rescales every copy of v to unit norm in the manifold metric.
ComplexTensor metric_normalized(const Manifold& m, const ComplexTensor& x,
                                const ComplexTensor& v) {
  std::vector<double> factors = m.inner(x, v, v);
  for (double& f : factors) f = f > 0.0 ? 1.0 / std::sqrt(f) : 0.0;
  return m.scale_copies(v, factors);
}

double relative(double error, double scale) { return error / std::max(scale, kTiny); }

/// Largest residual, or +inf when a margin sits at or below its floor.
double violation(const ResidualReport& report) {
  for (const MarginEntry& m : report.margins) {
    if (!(m.value > m.floor)) return std::numeric_limits<double>::infinity();
  }
  return report.max_residual();
}

CheckReport make_report(std::string check, const Manifold& m, std::string detail,
                        double upper, double lower = -std::numeric_limits<double>::infinity()) {
  CheckReport r;
  r.check = std::move(check);
  r.manifold = m.name();
  r.detail = std::move(detail);
  r.upper_bound = upper;
  r.lower_bound = lower;
  return r;
}

std::string shape_detail(const Shape& shape) { return "shape=" + shape_to_string(shape); }

Matrix random_unitary(Eigen::Index k, Rng& rng) {
  return qr_unique(rng.complex_gaussian(k, k)).q;
}

/// Row blocks of an element: one block for density/choi, m blocks of n rows
/// for povm.
Eigen::Index block_rows(const Manifold& m, const Matrix& element) {
  return m.descriptor().kind == ManifoldKind::kPovm ? element.cols() : element.rows();
}

ComplexTensor map_blocks(const Manifold& m, const ComplexTensor& a,
                         const std::function<Matrix(std::size_t, Eigen::Index,
                                                    const Matrix&)>& fn,
                         const Shape& out_shape) {
  const std::size_t copies = m.num_copies(a.shape());
  ComplexTensor out(out_shape);
  std::size_t block_index = 0;
  for (std::size_t c = 0; c < copies; ++c) {
    const Matrix el = m.element(a, c);
    const Eigen::Index rows = block_rows(m, el);
    Matrix result;
    for (Eigen::Index start = 0; start < el.rows(); start += rows) {
      const Matrix block = fn(block_index++, start, el.middleRows(start, rows));
      if (result.size() == 0) result.resize(el.rows() / rows * block.rows(), block.cols());
      result.middleRows(start / rows * block.rows(), block.rows()) = block;
    }
    const auto span = out.data().subspan(c * static_cast<std::size_t>(result.size()),
                                         static_cast<std::size_t>(result.size()));
    Eigen::Map<RowMajorMatrix>(span.data(), result.rows(), result.cols()) = result;
  }
  return out;
}

std::size_t block_count(const Manifold& m, const ComplexTensor& a) {
  const std::size_t copies = m.num_copies(a.shape());
  if (m.descriptor().kind != ManifoldKind::kPovm) return copies;
  return copies * a.shape()[a.rank() - 3];
}

/// Stacked A_i A_i^† for every block of every copy.
std::vector<Matrix> downstream(const Manifold& m, const ComplexTensor& a) {
  std::vector<Matrix> out;
  const std::size_t copies = m.num_copies(a.shape());
  for (std::size_t c = 0; c < copies; ++c) {
    const Matrix el = m.element(a, c);
    const Eigen::Index rows = block_rows(m, el);
    for (Eigen::Index start = 0; start < el.rows(); start += rows) {
      const Matrix block = el.middleRows(start, rows);
      out.push_back(block * block.adjoint());
    }
  }
  return out;
}

double downstream_deviation(const Manifold& m, const ComplexTensor& a,
                            const ComplexTensor& b) {
  const std::vector<Matrix> da = downstream(m, a);
  const std::vector<Matrix> db = downstream(m, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, (da[i] - db[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

double CheckReport::worst() const {
  double worst_value = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isnan(v)) return v;
    const double margin = std::min(v - lower_bound, upper_bound - v);
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_value = v;
    }
  }
  return worst_value;
}

void CheckReport::finalize() {
  if (exact) {
    passed = true;
    return;
  }
  passed = !values.empty();
  for (double v : values) {
    if (!(v >= lower_bound && v <= upper_bound)) passed = false;
  }
}

std::string CheckReport::to_json() const {
  auto finite_or_null = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["record"] = "check";
  j["check"] = check;
  j["manifold"] = manifold;
  j["detail"] = detail;
  j["passed"] = passed;
  j["exact"] = exact;
  j["worst"] = finite_or_null(values.empty() ? 0.0 : worst());
  j["lower_bound"] = finite_or_null(lower_bound);
  j["upper_bound"] = finite_or_null(upper_bound);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (double v : values) arr.push_back(finite_or_null(v));
  j["values"] = std::move(arr);
  return j.dump();
}

Shape element_shape(ManifoldKind kind, const ManifoldSizes& s) {
  switch (kind) {
    case ManifoldKind::kStiefel:
      return {s.n, s.p};
    case ManifoldKind::kHermitian:
    case ManifoldKind::kHpd:
      return {s.n, s.n};
    case ManifoldKind::kDensity:
      return {s.n, s.r};
    case ManifoldKind::kChoi:
      return {s.n * s.n, s.r};
    case ManifoldKind::kPovm:
      return {s.m, s.n, s.n};
  }
  throw ConfigError("unknown manifold kind");
}

TestLoss linear_test_loss(const Shape& shape, Rng& rng) {
  const ComplexTensor g = rng.complex_gaussian(shape);
  TestLoss loss;
  loss.name = "linear";
  loss.value = [g](const ComplexTensor& x) { return euclidean_inner(g, x); };
  loss.egrad = [g](const ComplexTensor&) { return g; };
  return loss;
}

TestLoss quadratic_test_loss(const Shape& shape, Rng& rng) {
  const Eigen::Index cols = static_cast<Eigen::Index>(shape.back());
  const Eigen::Index rows = static_cast<Eigen::Index>(shape_size(shape)) / cols;
  const Matrix m = rng.complex_gaussian(rows, rows) / std::sqrt(static_cast<double>(rows));
  const Matrix t = rng.complex_gaussian(rows, cols);
  auto as_matrix = [rows, cols](const ComplexTensor& x) -> Matrix {
    return Eigen::Map<const RowMajorMatrix>(x.data().data(), rows, cols);
  };
  TestLoss loss;
  loss.name = "quadratic";
  loss.value = [=](const ComplexTensor& x) { return (m * as_matrix(x) - t).squaredNorm(); };
  loss.egrad = [=](const ComplexTensor& x) {
    const Matrix e = 2.0 * m.adjoint() * (m * as_matrix(x) - t);
    ComplexTensor out(x.shape());
    Eigen::Map<RowMajorMatrix>(out.data().data(), rows, cols) = e;
    return out;
  };
  return loss;
}

TestLoss scaled_gradient_loss(TestLoss loss, double factor) {
  auto egrad = loss.egrad;
  loss.name += "_scaled";
  loss.egrad = [egrad, factor](const ComplexTensor& x) { return egrad(x) * factor; };
  return loss;
}

CheckReport gradient_check(const Manifold& manifold, const TestLoss& loss,
                           const Shape& shape, int trials, std::uint64_t seed,
                           double threshold) {
  CheckReport report = make_report("gradient", manifold,
                                   loss.name + " " + shape_detail(shape), threshold);
  Rng rng(seed);
  const double t = kFiniteDifferenceStep;
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    const ComplexTensor v = metric_normalized(manifold, x, manifold.random_tangent(x, rng));
    const ComplexTensor g = manifold.egrad_to_rgrad(x, loss.egrad(x));
    const double analytic = total_inner(manifold, x, g, v);
    const double fd = (loss.value(manifold.retraction(x, v * t)) -
                       loss.value(manifold.retraction(x, v * (-t)))) /
                      (2.0 * t);
    const double bound = std::sqrt(total_inner(manifold, x, g, g) *
                                   total_inner(manifold, x, v, v));
    const double scale = std::max(std::abs(fd), kDirectionalFloor * bound);
    report.values.push_back(relative(std::abs(analytic - fd), scale));
  }
  report.finalize();
  return report;
}

CheckReport rgrad_contract_check(const Manifold& manifold, const Shape& shape,
                                 int trials, int directions, std::uint64_t seed) {
  CheckReport report = make_report("rgrad_contract", manifold, shape_detail(shape), 1e-8);
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    const ComplexTensor e = rng.complex_gaussian(shape);
    const ComplexTensor g = manifold.egrad_to_rgrad(x, e);
    double worst = 0.0;
    for (int d = 0; d < directions; ++d) {
      const ComplexTensor v = manifold.random_tangent(x, rng);
      const std::vector<double> lhs = manifold.inner(x, g, v);
      for (std::size_t c = 0; c < lhs.size(); ++c) {
        const Matrix ec = manifold.element(e, c);
        const Matrix vc = manifold.element(v, c);
        const double rhs = ec.cwiseProduct(vc.conjugate()).sum().real();
        const double scale = ec.norm() * vc.norm();
        worst = std::max(worst, relative(std::abs(lhs[c] - rhs), scale));
      }
    }
    report.values.push_back(worst);
  }
  report.finalize();
  return report;
}

CheckReport retraction_order_check(const Manifold& manifold, const Shape& shape,
                                   int trials, std::uint64_t seed) {
  CheckReport report = make_report("retraction_order", manifold, shape_detail(shape),
                                   2.3, 1.9);
  Rng rng(seed);
  const double steps[] = {1e-1, 1e-2, 1e-3, 1e-4};
  bool all_exact = true;
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    const ComplexTensor v = metric_normalized(manifold, x, manifold.random_tangent(x, rng));
    std::vector<double> log_t;
    std::vector<double> log_r;
    bool exact = true;
    for (double t : steps) {
      const ComplexTensor straight = x + v * t;
      const double r = (manifold.retraction(x, v * t) - straight).frobenius_norm();
      if (r != 0.0) exact = false;
      log_t.push_back(std::log(t));
      log_r.push_back(std::log(std::max(r, kTiny)));
    }
    if (exact) continue;
    all_exact = false;
    const double n = static_cast<double>(log_t.size());
    double mt = 0.0, mr = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      mt += log_t[i] / n;
      mr += log_r[i] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      sxy += (log_t[i] - mt) * (log_r[i] - mr);
      sxx += (log_t[i] - mt) * (log_t[i] - mt);
    }
    report.values.push_back(sxy / sxx);
  }
  report.exact = all_exact && trials > 0;
  if (report.exact) report.detail += " residual identically zero";
  report.finalize();
  return report;
}

CheckReport retraction_velocity_check(const Manifold& manifold, const Shape& shape,
                                      int trials, std::uint64_t seed) {
  CheckReport report = make_report("retraction_velocity", manifold, shape_detail(shape),
                                   1e-6);
  Rng rng(seed);
  const double h = kFiniteDifferenceStep;
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    const ComplexTensor v = metric_normalized(manifold, x, manifold.random_tangent(x, rng));
    const ComplexTensor velocity =
        (manifold.retraction(x, v * h) - manifold.retraction(x, v * (-h))) * (0.5 / h);
    report.values.push_back(
        relative((velocity - v).frobenius_norm(), v.frobenius_norm()));
  }
  report.finalize();
  return report;
}

CheckReport gauge_invariance_check(const Manifold& manifold, const Shape& shape,
                                   int trials, std::uint64_t seed, GaugeLoss loss,
                                   int steps) {
  if (!manifold.descriptor().is_quotient()) {
    throw ConfigError("gauge_invariance_check: " + manifold.name() +
                      " is not a quotient manifold");
  }
  const char* loss_name = loss == GaugeLoss::kZero        ? "zero"
                          : loss == GaugeLoss::kInvariant ? "invariant"
                                                          : "gauge_dependent";
  CheckReport report =
      make_report("gauge_invariance", manifold,
                  std::string(loss_name) + " " + shape_detail(shape), 1e-9);
  Rng rng(seed);
  const RsgdConfig sgd{0.05, 0.9, Objective::kMinimize};
  RadamConfig adam;
  adam.learning_rate = 0.01;
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor a = manifold.random(shape, rng);
    const std::size_t blocks = block_count(manifold, a);
    std::vector<Matrix> targets;
    std::vector<Matrix> gauges;
    const Matrix probe = manifold.element(a, 0);
    const Eigen::Index rows = block_rows(manifold, probe);
    for (std::size_t b = 0; b < blocks; ++b) {
      targets.push_back(herm(rng.complex_gaussian(rows, rows)) / static_cast<double>(rows));
      gauges.push_back(random_unitary(probe.cols(), rng));
    }
    const ComplexTensor dependent = rng.complex_gaussian(shape);
    auto egrad = [&](const ComplexTensor& x) -> ComplexTensor {
      switch (loss) {
        case GaugeLoss::kZero:
          return ComplexTensor(x.shape());
        case GaugeLoss::kGaugeDependent:
          return dependent;
        case GaugeLoss::kInvariant:
          break;
      }
      return map_blocks(
          manifold, x,
          [&](std::size_t b, Eigen::Index, const Matrix& block) -> Matrix {
            return 4.0 * (block * block.adjoint() - targets[b]) * block;
          },
          x.shape());
    };
    const ComplexTensor rotated = map_blocks(
        manifold, a,
        [&](std::size_t b, Eigen::Index, const Matrix& block) -> Matrix {
          return block * gauges[b];
        },
        a.shape());

    double worst = 0.0;
    ComplexTensor x1 = a, x2 = rotated;
    OptimizerState s1, s2;
    for (int k = 0; k < steps; ++k) {
      StepResult r1 = rsgd_step(manifold, sgd, s1, x1, egrad(x1));
      StepResult r2 = rsgd_step(manifold, sgd, s2, x2, egrad(x2));
      x1 = std::move(r1.point);
      x2 = std::move(r2.point);
      s1 = std::move(r1.state);
      s2 = std::move(r2.state);
    }
    worst = std::max(worst, downstream_deviation(manifold, x1, x2));
    x1 = a;
    x2 = rotated;
    s1 = OptimizerState{};
    s2 = OptimizerState{};
    for (int k = 0; k < steps; ++k) {
      StepResult r1 = radam_step(manifold, adam, s1, x1, egrad(x1));
      StepResult r2 = radam_step(manifold, adam, s2, x2, egrad(x2));
      x1 = std::move(r1.point);
      x2 = std::move(r2.point);
      s1 = std::move(r1.state);
      s2 = std::move(r2.state);
    }
    worst = std::max(worst, downstream_deviation(manifold, x1, x2));
    report.values.push_back(worst);
  }
  report.finalize();
  return report;
}

std::vector<CheckReport> transport_checks(const Manifold& manifold, const Shape& shape,
                                          int trials, std::uint64_t seed) {
  const std::string detail = shape_detail(shape);
  CheckReport tangency = make_report("transport_tangency", manifold, detail, 1e-10);
  CheckReport linearity = make_report("transport_linearity", manifold, detail, 1e-12);
  CheckReport zero = make_report("transport_zero", manifold, detail, 1e-10);
  const ManifoldKind kind = manifold.descriptor().kind;
  const bool isometric = kind == ManifoldKind::kHpd || kind == ManifoldKind::kHermitian;
  CheckReport isometry = make_report("transport_isometry", manifold, detail, 1e-9);
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    const ComplexTensor v1 = metric_normalized(manifold, x, manifold.random_tangent(x, rng));
    const ComplexTensor v2 = metric_normalized(manifold, x, manifold.random_tangent(x, rng));
    const ComplexTensor w =
        metric_normalized(manifold, x, manifold.random_tangent(x, rng)) * 0.5;
    const double alpha = rng.normal();
    const ComplexTensor dest = manifold.retraction(x, w);
    const ComplexTensor t1 = manifold.vector_transport(x, v1, w);
    const ComplexTensor t2 = manifold.vector_transport(x, v2, w);
    tangency.values.push_back(
        std::max(violation(manifold.check_tangent(dest, t1)),
                 violation(manifold.check_tangent(dest, t2))));
    const ComplexTensor combined = manifold.vector_transport(x, v1 * alpha + v2, w);
    const ComplexTensor expected = t1 * alpha + t2;
    linearity.values.push_back(relative((combined - expected).frobenius_norm(),
                                        std::abs(alpha) * t1.frobenius_norm() +
                                            t2.frobenius_norm()));
    const ComplexTensor at_zero = manifold.vector_transport(x, v1, ComplexTensor(x.shape()));
    zero.values.push_back(
        relative((at_zero - v1).frobenius_norm(), v1.frobenius_norm()));
    if (isometric) {
      const std::vector<double> before = manifold.inner(x, v1, v2);
      const std::vector<double> after = manifold.inner(dest, t1, t2);
      double worst = 0.0;
      for (std::size_t c = 0; c < before.size(); ++c) {
        worst = std::max(worst, std::abs(after[c] - before[c]));
      }
      isometry.values.push_back(worst);
    }
  }
  std::vector<CheckReport> out{tangency, linearity, zero};
  if (isometric) out.push_back(isometry);
  for (CheckReport& r : out) r.finalize();
  return out;
}

std::vector<CheckReport> manifold_law_checks(const Manifold& manifold,
                                             const Shape& shape, int trials,
                                             std::uint64_t seed) {
  const std::string detail = shape_detail(shape);
  const double tol = kConstructionTolerance;
  CheckReport random_point = make_report("random_point", manifold, detail, tol);
  CheckReport random_tangent = make_report("random_tangent", manifold, detail, tol);
  CheckReport proj_tangent = make_report("proj_tangent", manifold, detail, tol);
  CheckReport idempotence = make_report("proj_idempotence", manifold, detail, tol);
  CheckReport orthogonality = make_report("proj_orthogonality", manifold, detail, tol);
  CheckReport symmetry = make_report("inner_symmetry", manifold, detail, 1e-12);
  CheckReport positivity = make_report("inner_positivity", manifold, detail,
                                       std::numeric_limits<double>::infinity(), 1e-12);
  CheckReport retraction_zero = make_report("retraction_zero", manifold, detail, tol);
  CheckReport retraction_point = make_report("retraction_point", manifold, detail, tol);
  CheckReport transported = make_report("transport_point", manifold, detail, tol);
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexTensor x = manifold.random(shape, rng);
    random_point.values.push_back(violation(manifold.check_point(x)));

    const ComplexTensor v = manifold.random_tangent(x, rng);
    random_tangent.values.push_back(violation(manifold.check_tangent(x, v)));

    const ComplexTensor w = rng.complex_gaussian(shape);
    const ComplexTensor pw = manifold.proj(x, w);
    proj_tangent.values.push_back(violation(manifold.check_tangent(x, pw)));
    idempotence.values.push_back(relative((manifold.proj(x, pw) - pw).frobenius_norm(),
                                          pw.frobenius_norm()));
    orthogonality.values.push_back(relative(std::abs(euclidean_inner(w - pw, pw)),
                                            w.frobenius_norm() * pw.frobenius_norm()));

    const std::vector<double> vw = manifold.inner(x, v, pw);
    const std::vector<double> wv = manifold.inner(x, pw, v);
    const std::vector<double> vv = manifold.inner(x, v, v);
    double asym = 0.0;
    double pos = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < vw.size(); ++c) {
      asym = std::max(asym, relative(std::abs(vw[c] - wv[c]), std::sqrt(vv[c]) *
                                                                  pw.frobenius_norm()));
      pos = std::min(pos, relative(vv[c], std::pow(manifold.element(v, c).norm(), 2)));
    }
    symmetry.values.push_back(asym);
    positivity.values.push_back(pos);

    retraction_zero.values.push_back(relative(
        (manifold.retraction(x, ComplexTensor(shape)) - x).frobenius_norm(),
        x.frobenius_norm()));

    const ComplexTensor unit = metric_normalized(manifold, x, v);
    double worst_point = 0.0;
    double worst_transport = 0.0;
    for (double step : {0.01, 0.1, 1.0}) {
      const ComplexTensor dir = unit * step;
      const ComplexTensor y = manifold.retraction(x, dir);
      worst_point = std::max(worst_point, violation(manifold.check_point(y)));
      worst_transport = std::max(
          worst_transport,
          violation(manifold.check_tangent(y, manifold.vector_transport(x, unit, dir))));
    }
    retraction_point.values.push_back(worst_point);
    transported.values.push_back(worst_transport);
  }
  std::vector<CheckReport> out{random_point,  random_tangent, proj_tangent,
                               idempotence,   orthogonality,  symmetry,
                               positivity,    retraction_zero, retraction_point,
                               transported};
  for (CheckReport& r : out) r.finalize();
  return out;
}

std::vector<CheckReport> run_manifold_suite(const Manifold& manifold,
                                            const ManifoldSizes& sizes, int trials,
                                            std::uint64_t seed) {
  Shape shape = element_shape(manifold.descriptor().kind, sizes);
  shape.insert(shape.begin(), 2);
  std::vector<CheckReport> out = manifold_law_checks(manifold, shape, trials, seed);
  {
    Rng rng(seed + 1);
    out.push_back(gradient_check(manifold, quadratic_test_loss(shape, rng), shape, trials,
                                 seed + 2));
  }
  if (manifold.descriptor().kind == ManifoldKind::kHermitian) {
    Rng rng(seed + 3);
    out.push_back(gradient_check(manifold, linear_test_loss(shape, rng), shape, trials,
                                 seed + 4, 1e-9));
  }
  out.push_back(rgrad_contract_check(manifold, shape, trials, 20, seed + 5));
  out.push_back(retraction_order_check(manifold, shape, trials, seed + 6));
  out.push_back(retraction_velocity_check(manifold, shape, trials, seed + 7));
  for (CheckReport& r : transport_checks(manifold, shape, trials, seed + 8)) {
    out.push_back(std::move(r));
  }
  if (manifold.descriptor().is_quotient()) {
    out.push_back(gauge_invariance_check(manifold, shape, trials, seed + 9,
                                         GaugeLoss::kInvariant));
    out.push_back(
        gauge_invariance_check(manifold, shape, trials, seed + 10, GaugeLoss::kZero));
  }
  return out;
}

}  // namespace qmanopt
