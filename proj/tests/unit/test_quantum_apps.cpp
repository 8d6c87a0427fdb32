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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qmanopt/apps/experiments.hpp"
#include "qmanopt/apps/gate_decomposition.hpp"
#include "qmanopt/apps/tomography.hpp"
#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/manifold.hpp"
#include "test_util.hpp"

namespace qmanopt {
namespace {

using testing::kron_oracle;
using testing::max_abs;
using testing::partial_trace_oracle;

Matrix pure_state(Eigen::Index d, Eigen::Index index) {
  Matrix rho = Matrix::Zero(d, d);
  rho(index, index) = 1.0;
  return rho;
}

Matrix kraus_action(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& k : kraus) out += k * rho * k.adjoint();
  return out;
}

Matrix random_state(Eigen::Index d, Rng& rng) {
  const Matrix g = rng.complex_gaussian(d, d);
  const Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// -(1/N) sum log Tr(A A^† (rho^T (x) M)) straight from the definition.
double likelihood_oracle(const Matrix& a, const TomographyDataset& data,
                         const TetrahedralPovm& povm) {
  double acc = 0.0;
  const double n = static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Matrix x = kron_oracle(data.rho_in[i].transpose(), povm.elements[data.outcome_index[i]]);
    const double p = (a * a.adjoint() * x).trace().real();
    const double w = data.weights.empty() ? 1.0 / n : data.weights[i];
    acc -= w * std::log(p);
  }
  return acc;
}

TEST(Povm, SingleQubitElementsFromTetrahedron) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  ASSERT_EQ(povm.elements.size(), 4u);
  Matrix m0(2, 2);
  m0 << 0.5, 0.0, 0.0, 0.0;
  EXPECT_LT(max_abs(povm.elements[0] - m0), 1e-15);
  Matrix sum = Matrix::Zero(2, 2);
  for (const Matrix& m : povm.elements) {
    sum += m;
    EXPECT_LT(max_abs(m - m.adjoint()), 1e-16);
    const RealVector ev = eigh(m).values;
    EXPECT_NEAR(ev(0), 0.0, 1e-15);
    EXPECT_NEAR(ev(1), 0.5, 1e-15);
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(2, 2)), 1e-15);
}

TEST(Povm, SecondElementMatchesBlochVector) {
  // s1 = (2 sqrt 2 / 3, 0, -1/3)
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const double sx = 2.0 * std::numbers::sqrt2 / 3.0;
  Matrix m1(2, 2);
  m1 << 0.25 * (1.0 - 1.0 / 3.0), 0.25 * sx, 0.25 * sx, 0.25 * (1.0 + 1.0 / 3.0);
  EXPECT_LT(max_abs(povm.elements[1] - m1), 1e-15);
}

TEST(Povm, MultiQubitElementsAreLexicographicProducts) {
  const TetrahedralPovm one = build_tetrahedral_povm(1);
  const TetrahedralPovm two = build_tetrahedral_povm(2);
  ASSERT_EQ(two.elements.size(), 16u);
  Matrix sum = Matrix::Zero(4, 4);
  for (std::size_t k = 0; k < 16; ++k) {
    EXPECT_LT(max_abs(two.elements[k] - kron_oracle(one.elements[k / 4], one.elements[k % 4])),
              1e-16);
    sum += two.elements[k];
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(4, 4)), 1e-10);
}

TEST(Channel, RandomChannelInvariants) {
  for (std::size_t n : {1u, 2u}) {
    const Eigen::Index d = Eigen::Index{1} << n;
    for (std::size_t rank : {1u, 2u, 3u}) {
      const Channel ch = random_channel(n, rank, 7 + rank);
      EXPECT_EQ(ch.kraus.size(), rank);
      EXPECT_LT(max_abs(ch.choi - ch.choi.adjoint()), 1e-14);
      EXPECT_LT(max_abs(partial_trace_oracle(ch.choi, d) - Matrix::Identity(d, d)), 1e-10);
      EXPECT_NEAR(ch.choi.trace().real(), static_cast<double>(d), 1e-12);
      const RealVector ev = eigh(ch.choi).values;
      int count = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        EXPECT_GT(ev(i), -1e-10);
        count += ev(i) > 1e-10 ? 1 : 0;
      }
      EXPECT_EQ(count, static_cast<int>(rank));
      Matrix completeness = Matrix::Zero(d, d);
      for (const Matrix& k : ch.kraus) completeness += k.adjoint() * k;
      EXPECT_LT(max_abs(completeness - Matrix::Identity(d, d)), 1e-12);
    }
  }
}

TEST(Channel, RankOneIsUnitary) {
  const Channel ch = random_channel(1, 1, 3);
  const Matrix& k = ch.kraus[0];
  EXPECT_LT(max_abs(k * k.adjoint() - Matrix::Identity(2, 2)), 1e-12);
}

TEST(Channel, ChoiMatchesDefinition) {
  const Channel ch = random_channel(1, 2, 4);
  // C = sum_{k,l} |k><l| (x) Phi(|k><l|)
  Matrix c = Matrix::Zero(4, 4);
  for (Eigen::Index k = 0; k < 2; ++k) {
    for (Eigen::Index l = 0; l < 2; ++l) {
      Matrix e = Matrix::Zero(2, 2);
      e(k, l) = 1.0;
      c += kron_oracle(e, kraus_action(ch.kraus, e));
    }
  }
  EXPECT_LT(max_abs(ch.choi - c), 1e-14);
  const Matrix a = choi_param_from_kraus(ch.kraus);
  EXPECT_LT(max_abs(a * a.adjoint() - c), 1e-14);
}

TEST(Channel, RejectsBadRank) {
  EXPECT_THROW(random_channel(1, 0, 0), ConfigError);
  EXPECT_THROW(random_channel(1, 5, 0), ConfigError);
  EXPECT_THROW(random_channel(0, 1, 0), ConfigError);
}

TEST(ApplyChannel, IdentityChannelIsIdentity) {
  Rng rng(1);
  for (std::size_t n : {1u, 2u}) {
    const Channel id = identity_channel(n);
    const Matrix rho = random_state(Eigen::Index{1} << n, rng);
    EXPECT_LT(max_abs(apply_channel(id.choi, rho) - rho), 1e-15);
  }
}

TEST(ApplyChannel, DepolarizingChannelOutputsMaximallyMixedState) {
  Rng rng(2);
  const Channel dep = depolarizing_channel(1);
  const Matrix rho = 3.0 * random_state(2, rng);
  EXPECT_LT(max_abs(apply_channel(dep.choi, rho) - 1.5 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(ApplyChannel, MatchesKrausFormAndPreservesTrace) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Channel ch = random_channel(2, 3, 100 + t);
    const Matrix rho = random_state(4, rng);
    const Matrix out = apply_channel(ch.choi, rho);
    EXPECT_LT(max_abs(out - kraus_action(ch.kraus, rho)), 1e-14);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_abs(out - out.adjoint()), 1e-15);
  }
}

TEST(ApplyChannel, ShapeMismatchThrows) {
  EXPECT_THROW(apply_channel(identity_channel(1).choi, Matrix::Identity(4, 4)), ShapeError);
  EXPECT_THROW(apply_channel(Matrix::Identity(3, 3), Matrix::Identity(2, 2)), ShapeError);
}

TEST(Dataset, IdentityChannelProbabilityOfGroundState) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const std::vector<double> p =
      outcome_probabilities(identity_channel(1).choi, pure_state(2, 0), povm);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  double sum = 0.0;
  for (double v : p) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Dataset, SampledStatesArePure) {
  const TetrahedralPovm povm = build_tetrahedral_povm(2);
  const TomographyDataset data = sample_dataset(random_channel(2, 2, 5), 50, povm, 6);
  ASSERT_EQ(data.size(), 50u);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Matrix& rho = data.rho_in[i];
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
    EXPECT_LT(max_abs(rho * rho - rho), 1e-14);
    EXPECT_LT(data.outcome_index[i], 16u);
  }
}

TEST(Dataset, OutcomeFrequenciesPassChiSquare) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const Channel ch = random_channel(1, 2, 8);
  const std::size_t n = 100000;
  const TomographyDataset data = sample_dataset(ch, n, povm, 9);
  std::vector<double> expected(4, 0.0), observed(4, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> p = outcome_probabilities(ch.choi, data.rho_in[i], povm);
    for (std::size_t k = 0; k < 4; ++k) expected[k] += p[k];
    observed[data.outcome_index[i]] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    chi2 += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
  }
  // 99.9% quantile of chi-square with 3 degrees of freedom.
  EXPECT_LT(chi2, 16.27);
}

TEST(Dataset, ExactProbabilityWeightsSumToOne) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const TomographyDataset data = exact_probability_dataset(random_channel(1, 2, 10), 8, povm, 11);
  EXPECT_EQ(data.size(), 32u);
  double sum = 0.0;
  for (double w : data.weights) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Likelihood, MatchesDefinitionAndFiniteDifferences) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const TomographyDataset data = sample_dataset(random_channel(1, 2, 12), 200, povm, 13);
  const Manifold choi(ManifoldDescriptor::choi());
  Rng rng(14);
  const ComplexTensor a = choi.random({4, 2}, rng);
  const LossAndGrad lg = likelihood_loss_and_grad(a, data, povm);
  EXPECT_NEAR(lg.loss, likelihood_oracle(a.to_matrix(), data, povm), 1e-12);
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    const ComplexTensor dir = rng.complex_gaussian(a.shape());
    const double fd = (likelihood_loss_and_grad(a + h * dir, data, povm).loss -
                       likelihood_loss_and_grad(a - h * dir, data, povm).loss) /
                      (2.0 * h);
    const double analytic = testing::real_inner_oracle(lg.egrad, dir);
    EXPECT_LT(std::abs(analytic - fd), 1e-6 * std::abs(fd)) << k;
  }
}

TEST(Likelihood, TrueChannelMinimizesExpectedLoss) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  const Channel truth = random_channel(1, 2, 15);
  const TomographyDataset data = exact_probability_dataset(truth, 16, povm, 16);
  const ComplexTensor a_true = ComplexTensor::from_matrix(choi_param_from_kraus(truth.kraus));
  const double best = likelihood_loss_and_grad(a_true, data, povm).loss;
  const Manifold choi(ManifoldDescriptor::choi());
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const ComplexTensor a = choi.random({4, 2}, rng);
    EXPECT_GE(likelihood_loss_and_grad(a, data, povm).loss, best - 1e-12);
  }
}

TEST(Likelihood, MaximallyMixedObservableGivesZeroLoss) {
  // rho^T (x) M = I/2 for rho = I/2 and a two-outcome measurement M = I.
  TetrahedralPovm trivial;
  trivial.n_qubits = 1;
  trivial.elements = {Matrix::Identity(2, 2)};
  TomographyDataset data;
  data.rho_in = {0.5 * Matrix::Identity(2, 2)};
  data.outcome_index = {0};
  const Manifold choi(ManifoldDescriptor::choi());
  Rng rng(18);
  const LossAndGrad lg = likelihood_loss_and_grad(choi.random({4, 3}, rng), data, trivial);
  EXPECT_NEAR(lg.loss, 0.0, 1e-14);
}

TEST(Likelihood, ZeroProbabilityOutcomeIsDegenerate) {
  const TetrahedralPovm povm = build_tetrahedral_povm(1);
  TomographyDataset data;
  data.rho_in = {pure_state(2, 1)};
  data.outcome_index = {0};
  const ComplexTensor a = ComplexTensor::from_matrix(choi_param_from_kraus(identity_channel(1).kraus));
  EXPECT_THROW(likelihood_loss_and_grad(a, data, povm), LikelihoodDegeneracyError);
}

ComplexTensor gate_vars(const std::vector<Matrix>& us) {
  ComplexTensor vars(kGateDecompositionShape);
  for (std::size_t f = 0; f < 8; ++f) {
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) vars[f * 4 + i * 2 + j] = us[f](i, j);
  }
  return vars;
}

std::vector<Matrix> random_factors(Rng& rng) {
  std::vector<Matrix> us;
  for (int f = 0; f < 8; ++f) us.push_back(haar_unitary(2, rng));
  return us;
}

Matrix product_oracle(const std::vector<Matrix>& us) {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  Matrix d = kron_oracle(us[6], us[7]);
  for (int t = 2; t >= 0; --t) d = d * cnot * kron_oracle(us[2 * t], us[2 * t + 1]);
  return d;
}

TEST(GateDecomposition, ProductOrderAndUnitarity) {
  Rng rng(20);
  const std::vector<Matrix> us = random_factors(rng);
  const Matrix d = decomposition_unitary(gate_vars(us));
  EXPECT_LT(max_abs(d - product_oracle(us)), 1e-14);
  EXPECT_LT(max_abs(d.adjoint() * d - Matrix::Identity(4, 4)), 1e-10);
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_EQ(cnot_matrix(), cnot);
}

TEST(GateDecomposition, ExactTargetHasZeroLossAndGradient) {
  Rng rng(21);
  const ComplexTensor vars = gate_vars(random_factors(rng));
  const LossAndGrad lg = gate_decomposition_loss_and_grad(vars, decomposition_unitary(vars));
  EXPECT_LT(lg.loss, 1e-24);
  EXPECT_LT(lg.egrad.frobenius_norm(), 1e-12);
}

TEST(GateDecomposition, FactorGradientsMatchFiniteDifferences) {
  Rng rng(22);
  const ComplexTensor vars = gate_vars(random_factors(rng));
  const Matrix target = haar_unitary(4, rng);
  const LossAndGrad lg = gate_decomposition_loss_and_grad(vars, target);
  const double h = 1e-6;
  for (std::size_t f = 0; f < 8; ++f) {
    ComplexTensor dir(kGateDecompositionShape);
    for (std::size_t k = 0; k < 4; ++k) dir[f * 4 + k] = Complex(rng.normal(), rng.normal());
    const double fd = (gate_decomposition_loss_and_grad(vars + h * dir, target).loss -
                       gate_decomposition_loss_and_grad(vars - h * dir, target).loss) /
                      (2.0 * h);
    const double analytic = testing::real_inner_oracle(lg.egrad, dir);
    EXPECT_LT(std::abs(analytic - fd), 1e-6 * std::abs(fd)) << "factor " << f;
  }
}

TEST(GateDecomposition, GlobalPhaseIsAbsorbedByOneFactor) {
  Rng rng(23);
  std::vector<Matrix> us = random_factors(rng);
  const Matrix target = haar_unitary(4, rng);
  const double before = gate_decomposition_loss_and_grad(gate_vars(us), target).loss;
  const Complex phase = std::polar(1.0, 0.7);
  us[0] *= phase;
  const double after = gate_decomposition_loss_and_grad(gate_vars(us), phase * target).loss;
  EXPECT_NEAR(after, before, 1e-12);
}

TEST(KronAdjoint, IdentityRightFactorGivesBlockTrace) {
  Rng rng(24);
  const Matrix g = rng.complex_gaussian(4, 4);
  const KronAdjoint k = kron_adjoint(g, haar_unitary(2, rng), Matrix::Identity(2, 2));
  Matrix expected(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) expected(i, j) = g(2 * i, 2 * j) + g(2 * i + 1, 2 * j + 1);
  EXPECT_LT(max_abs(k.ga - expected), 1e-15);
}

TEST(KronAdjoint, SatisfiesAdjointIdentity) {
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const Matrix g = rng.complex_gaussian(4, 4);
    const Matrix a = rng.complex_gaussian(2, 2);
    const Matrix b = rng.complex_gaussian(2, 2);
    const Matrix da = rng.complex_gaussian(2, 2);
    const Matrix db = rng.complex_gaussian(2, 2);
    const KronAdjoint k = kron_adjoint(g, a, b);
    EXPECT_NEAR(testing::real_inner_oracle(g, kron_oracle(da, b)),
                testing::real_inner_oracle(k.ga, da), 1e-13);
    EXPECT_NEAR(testing::real_inner_oracle(g, kron_oracle(a, db)),
                testing::real_inner_oracle(k.gb, db), 1e-13);
  }
}

TEST(KronAdjoint, IsLinearInG) {
  Rng rng(26);
  const Matrix g1 = rng.complex_gaussian(4, 4);
  const Matrix g2 = rng.complex_gaussian(4, 4);
  const Matrix a = rng.complex_gaussian(2, 2);
  const Matrix b = rng.complex_gaussian(2, 2);
  const Complex s(0.3, -1.2);
  const KronAdjoint sum = kron_adjoint(g1 + s * g2, a, b);
  EXPECT_LT(max_abs(sum.ga - kron_adjoint(g1, a, b).ga - s * kron_adjoint(g2, a, b).ga), 1e-14);
  EXPECT_LT(max_abs(sum.gb - kron_adjoint(g1, a, b).gb - s * kron_adjoint(g2, a, b).gb), 1e-14);
  EXPECT_THROW(kron_adjoint(Matrix::Identity(3, 3), a, b), ShapeError);
}

TEST(Jamiolkowski, IdentityAgainstDepolarizing) {
  EXPECT_NEAR(jamiolkowski_distance(identity_channel(1).choi, depolarizing_channel(1).choi, 1),
              1.5, 1e-14);
  const Matrix c = random_channel(1, 2, 27).choi;
  EXPECT_NEAR(jamiolkowski_distance(c, c, 1), 0.0, 1e-15);
}

TEST(Jamiolkowski, IsAMetricOnRandomChannels) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix a = random_channel(2, 2, 3 * s).choi;
    const Matrix b = random_channel(2, 3, 3 * s + 1).choi;
    const Matrix c = random_channel(2, 1, 3 * s + 2).choi;
    const double ab = jamiolkowski_distance(a, b, 2);
    EXPECT_NEAR(ab, jamiolkowski_distance(b, a, 2), 1e-13);
    EXPECT_LE(jamiolkowski_distance(a, c, 2), ab + jamiolkowski_distance(b, c, 2) + 1e-13);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 2.0);
  }
}

TEST(Experiments, GateDecompositionTraceAndDeterminism) {
  GateDecompositionConfig config;
  config.seed = 3;
  config.iterations = 50;
  config.timing = false;
  const GateDecompositionResult a = run_gate_decomposition(config);
  const GateDecompositionResult b = run_gate_decomposition(config);
  ASSERT_EQ(a.trace.size(), 51u);
  EXPECT_EQ(a.trace.front().iteration, 0u);
  EXPECT_EQ(a.vars, b.vars);
  for (const TraceRow& row : a.trace) {
    EXPECT_LT(row.constraint_residual, 1e-8);
    EXPECT_EQ(row.wall_time_ms, 0.0);
    EXPECT_NEAR(*row.metric, std::sqrt(row.loss), 1e-15);
  }
  EXPECT_LT(a.trace.back().loss, a.trace.front().loss);
  EXPECT_NEAR(a.final_distance, (decomposition_unitary(a.vars) - a.target).norm(), 1e-12);
}

TEST(Experiments, GateTargetValidation) {
  EXPECT_THROW(validate_gate_target(Matrix::Identity(3, 3)), ConfigError);
  EXPECT_THROW(validate_gate_target(2.0 * Matrix::Identity(4, 4)), ConfigError);
  Matrix nan = Matrix::Identity(4, 4);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(validate_gate_target(nan), ConfigError);
  EXPECT_NO_THROW(validate_gate_target(cnot_matrix()));
}

TEST(Experiments, ExactTomographyConvergesAndStaysFeasible) {
  ChannelTomographyConfig config;
  config.exact_probabilities = true;
  config.iterations = 300;
  config.states = 16;
  config.timing = false;
  config.seed = 4;
  std::size_t rows_seen = 0;
  config.on_row = [&](const TraceRow&) { ++rows_seen; };
  const ChannelTomographyResult r = run_channel_tomography(config);
  EXPECT_EQ(rows_seen, r.trace.size());
  for (const TraceRow& row : r.trace) EXPECT_LT(row.constraint_residual, 1e-8);
  EXPECT_LT(r.final_distance, r.trace.front().metric.value());
  EXPECT_NEAR(r.final_distance, jamiolkowski_distance(r.truth.choi, r.estimate_choi, 1), 1e-15);
  const Matrix est = r.estimate_choi;
  EXPECT_LT(max_abs(partial_trace_oracle(est, 2) - Matrix::Identity(2, 2)), 1e-8);
}

}  // namespace
}  // namespace qmanopt
