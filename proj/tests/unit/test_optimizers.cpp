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

#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "qmanopt/diagnostics.hpp"
#include "qmanopt/errors.hpp"
#include "qmanopt/optimizers.hpp"
#include "../acceptance/product_loss.hpp"
#include "qmanopt/apps/tomography.hpp"
#include "test_util.hpp"

namespace qmanopt {
namespace {

using testing::max_abs;
using testing::tensor_element;

/// f(X) = sum_c ||X_c^2 - T_c||_F^2 over a batch of Hermitian matrices.
struct SquareLoss {
  std::vector<Matrix> targets;

  double value(const std::vector<Matrix>& x) const {
    double acc = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) acc += (x[c] * x[c] - targets[c]).squaredNorm();
    return acc;
  }
  std::vector<Matrix> egrad(const std::vector<Matrix>& x) const {
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const Matrix r = x[c] * x[c] - targets[c];
      out.push_back(2.0 * (x[c] * r + r * x[c]));
    }
    return out;
  }
};

ComplexTensor stack(const std::vector<Matrix>& ms) {
  const auto n = static_cast<std::size_t>(ms[0].rows());
  ComplexTensor t(Shape{ms.size(), n, n});
  for (std::size_t c = 0; c < ms.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[(c * n + i) * n + j] = ms[c](i, j);
  }
  return t;
}

std::vector<Matrix> unstack(const ComplexTensor& t) {
  const auto n = static_cast<Eigen::Index>(t.shape()[1]);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < t.shape()[0]; ++c) out.push_back(tensor_element(t, c, n, n));
  return out;
}

SquareLoss make_square_loss(Rng& rng, int copies, Eigen::Index n) {
  SquareLoss loss;
  for (int c = 0; c < copies; ++c) {
    loss.targets.push_back(testing::random_hpd(n, rng, 0.0) / static_cast<double>(n));
  }
  return loss;
}

std::vector<Matrix> initial_hermitian(Rng& rng, int copies, Eigen::Index n) {
  std::vector<Matrix> out;
  for (int c = 0; c < copies; ++c) out.push_back(0.3 * testing::random_hermitian(n, rng));
  return out;
}

TEST(OptimizerConfig, ValidatesRanges) {
  EXPECT_THROW((RsgdConfig{0.0, 0.5}.validate()), ConfigError);
  EXPECT_THROW((RsgdConfig{0.1, 1.0}.validate()), ConfigError);
  EXPECT_THROW((RsgdConfig{0.1, -0.1}.validate()), ConfigError);
  EXPECT_NO_THROW((RsgdConfig{0.1, 0.0}.validate()));
  RadamConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eps = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = RadamConfig{};
  c.beta2 = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = RadamConfig{};
  c.learning_rate = -1.0;
  EXPECT_THROW(Radam(Manifold(ManifoldDescriptor::hermitian()), c), ConfigError);
}

TEST(Rsgd, HermitianTrajectoryMatchesEuclideanMomentumSgd) {
  Rng rng(1);
  const SquareLoss loss = make_square_loss(rng, 2, 3);
  std::vector<Matrix> ref = initial_hermitian(rng, 2, 3);
  ComplexTensor x = stack(ref);
  const RsgdConfig config{0.02, 0.9};
  Rsgd opt(Manifold(ManifoldDescriptor::hermitian()), config);

  std::vector<Matrix> mom(2, Matrix::Zero(3, 3));
  for (int step = 0; step < 100; ++step) {
    const ComplexTensor g = stack(loss.egrad(unstack(x)));
    opt.apply_gradients({{&g, &x}});
    const std::vector<Matrix> rg = loss.egrad(ref);
    for (int c = 0; c < 2; ++c) {
      mom[c] = config.momentum * mom[c] + (1.0 - config.momentum) * rg[c];
      ref[c] -= config.learning_rate * mom[c];
    }
    const std::vector<Matrix> got = unstack(x);
    for (int c = 0; c < 2; ++c) ASSERT_LT(max_abs(got[c] - ref[c]), 1e-12) << step;
  }
}

TEST(Radam, HermitianTrajectoryMatchesNormBasedEuclideanAdam) {
  for (bool amsgrad : {false, true}) {
    Rng rng(2);
    const SquareLoss loss = make_square_loss(rng, 2, 3);
    std::vector<Matrix> ref = initial_hermitian(rng, 2, 3);
    ComplexTensor x = stack(ref);
    RadamConfig config;
    config.learning_rate = 0.01;
    config.amsgrad = amsgrad;
    Radam opt(Manifold(ManifoldDescriptor::hermitian()), config);

    std::vector<Matrix> m(2, Matrix::Zero(3, 3));
    std::vector<double> v(2, 0.0), vmax(2, 0.0);
    for (int t = 1; t <= 100; ++t) {
      const ComplexTensor g = stack(loss.egrad(unstack(x)));
      opt.apply_gradients({{&g, &x}});
      const std::vector<Matrix> rg = loss.egrad(ref);
      for (int c = 0; c < 2; ++c) {
        m[c] = config.beta1 * m[c] + (1.0 - config.beta1) * rg[c];
        v[c] = config.beta2 * v[c] + (1.0 - config.beta2) * rg[c].squaredNorm();
        const Matrix mhat = m[c] / (1.0 - std::pow(config.beta1, t));
        double vhat = v[c] / (1.0 - std::pow(config.beta2, t));
        if (amsgrad) {
          vmax[c] = std::max(vmax[c], vhat);
          vhat = vmax[c];
        }
        ref[c] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.eps);
      }
      const std::vector<Matrix> got = unstack(x);
      for (int c = 0; c < 2; ++c) ASSERT_LT(max_abs(got[c] - ref[c]), 1e-10) << t;
    }
  }
}

TEST(Radam, FirstStepIsUnitScaledGradient) {
  const Manifold m(ManifoldDescriptor::stiefel());
  Rng rng(3);
  const Shape shape{4, 2};
  const ComplexTensor x = m.random(shape, rng);
  const ComplexTensor e = rng.complex_gaussian(shape);
  RadamConfig config;
  config.learning_rate = 1e-4;
  config.eps = 1e-300;
  const StepResult r = radam_step(m, config, {}, x, e);
  const ComplexTensor g = m.egrad_to_rgrad(x, e);
  const double norm = std::sqrt(m.inner(x, g, g)[0]);
  const ComplexTensor expected = m.retraction(x, (-config.learning_rate / norm) * g);
  EXPECT_LT(max_abs_diff(r.point, expected), 1e-14);
  EXPECT_EQ(r.state.step_count, 1u);
}

TEST(Radam, AmsgradEffectiveStepNeverGrows) {
  const Manifold m(ManifoldDescriptor::hermitian());
  Rng rng(4);
  RadamConfig config;
  config.learning_rate = 0.05;
  config.amsgrad = true;
  ComplexTensor x = m.random({3, 3}, rng);
  OptimizerState state;
  double previous = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    // Unit-norm gradient whose direction changes every step.
    ComplexTensor g = m.proj(x, rng.complex_gaussian({3, 3}));
    g *= 1.0 / g.frobenius_norm();
    const StepResult r = radam_step(m, config, state, x, g);
    const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t + 1));
    EXPECT_GE(r.state.second_moment_max[0] + 1e-15, r.state.second_moment[0] / bias2);
    const double effective = config.learning_rate / (std::sqrt(r.state.second_moment_max[0]) + config.eps);
    EXPECT_LE(effective, previous * (1.0 + 1e-15));
    previous = effective;
    x = r.point;
    state = r.state;
  }
}

TEST(Rsgd, ZeroMomentumStepLandsOnStiefel) {
  const Manifold m(ManifoldDescriptor::stiefel());
  Rng rng(5);
  const ComplexTensor u = m.random({5, 3}, rng);
  const ComplexTensor e = rng.complex_gaussian({5, 3});
  const StepResult r = rsgd_step(m, RsgdConfig{0.1, 0.0}, {}, u, e);
  EXPECT_TRUE(m.check_point(r.point).passes(1e-12));
  const ComplexTensor expected = m.retraction(u, -0.1 * m.egrad_to_rgrad(u, e));
  EXPECT_LT(max_abs_diff(r.point, expected), 1e-15);
}

TEST(Rsgd, ZeroGradientDecaysMomentumOnly) {
  const Manifold m(ManifoldDescriptor::hermitian());
  Rng rng(6);
  const ComplexTensor x = m.random({3, 3}, rng);
  OptimizerState state;
  state.momentum = m.proj(x, rng.complex_gaussian({3, 3}));
  const ComplexTensor zero(Shape{3, 3});
  const RsgdConfig config{0.1, 0.9};
  // With a nonzero momentum the point moves; with both zero it stays.
  const StepResult r0 = rsgd_step(m, config, {}, x, zero);
  EXPECT_EQ(r0.point, x);
  const StepResult r1 = rsgd_step(m, config, state, x, zero);
  EXPECT_LT(max_abs_diff(r1.state.momentum, 0.9 * state.momentum), 1e-15);
}

TEST(Rsgd, MaximizeFollowsTheNegatedLoss) {
  const Manifold m(ManifoldDescriptor::density());
  Rng rng(7);
  const Shape shape{3, 2};
  const ComplexTensor x = m.random(shape, rng);
  const ComplexTensor e = rng.complex_gaussian(shape);
  RsgdConfig up{0.05, 0.5, Objective::kMaximize};
  RsgdConfig down{0.05, 0.5, Objective::kMinimize};
  const StepResult a = rsgd_step(m, up, {}, x, e);
  const StepResult b = rsgd_step(m, down, {}, x, -1.0 * e);
  EXPECT_EQ(a.point, b.point);
  RadamConfig aup;
  aup.objective = Objective::kMaximize;
  const StepResult c = radam_step(m, aup, {}, x, e);
  const StepResult d = radam_step(m, RadamConfig{}, {}, x, -1.0 * e);
  EXPECT_EQ(c.point, d.point);
}

class OptimizerInvariants : public ::testing::TestWithParam<ManifoldDescriptor> {};

TEST_P(OptimizerInvariants, ConstraintsAndMomentumTangencyHoldEveryStep) {
  const Manifold m(GetParam());
  const ManifoldSizes sizes;
  Shape shape{2};
  for (std::size_t e : element_shape(GetParam().kind, sizes)) shape.push_back(e);
  Rng rng(8);
  const TestLoss loss = quadratic_test_loss(shape, rng);
  for (int which = 0; which < 2; ++which) {
    ComplexTensor x = m.random(shape, rng);
    OptimizerState state;
    for (int step = 0; step < 30; ++step) {
      RadamConfig rc;
      rc.learning_rate = 0.01;
      const StepResult r = which == 0 ? rsgd_step(m, RsgdConfig{0.01, 0.9}, state, x, loss.egrad(x))
                                      : radam_step(m, rc, state, x, loss.egrad(x));
      ASSERT_TRUE(m.check_point(r.point).passes()) << m.check_point(r.point).summary();
      ASSERT_TRUE(m.check_tangent(r.point, r.state.momentum).passes())
          << m.check_tangent(r.point, r.state.momentum).summary();
      x = r.point;
      state = r.state;
    }
  }
}

TEST_P(OptimizerInvariants, SmallStepsDescend) {
  const Manifold m(GetParam());
  const ManifoldSizes sizes;
  const Shape shape = element_shape(GetParam().kind, sizes);
  int decreased = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const TestLoss loss = quadratic_test_loss(shape, rng);
    const ComplexTensor x = m.random(shape, rng);
    const StepResult r = rsgd_step(m, RsgdConfig{1e-4, 0.0}, {}, x, loss.egrad(x));
    decreased += loss.value(r.point) < loss.value(x) ? 1 : 0;
  }
  EXPECT_GE(decreased, 95);
}

TEST_P(OptimizerInvariants, RunsAreDeterministic) {
  const Manifold m(GetParam());
  const Shape shape = element_shape(GetParam().kind, ManifoldSizes{});
  auto run = [&] {
    Rng rng(9);
    const TestLoss loss = quadratic_test_loss(shape, rng);
    ComplexTensor x = m.random(shape, rng);
    RadamConfig c;
    c.learning_rate = 0.01;
    Radam opt(m, c);
    for (int i = 0; i < 10; ++i) {
      const ComplexTensor g = loss.egrad(x);
      opt.apply_gradients({{&g, &x}});
    }
    return x;
  };
  EXPECT_EQ(run(), run());
}

INSTANTIATE_TEST_SUITE_P(AllVariants, OptimizerInvariants,
                         ::testing::ValuesIn(ManifoldDescriptor::all_variants()),
                         [](const auto& info) {
                           std::string s;
                           for (char ch : info.param.name()) {
                             s += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                           }
                           return s;
                         });

TEST(ApplyGradients, IndependentVariablesMatchSingleCalls) {
  const Manifold m(ManifoldDescriptor::density());
  Rng rng(10);
  const Shape shape{3, 2};
  ComplexTensor a = m.random(shape, rng);
  ComplexTensor b = m.random(shape, rng);
  ComplexTensor a1 = a;
  ComplexTensor b1 = b;
  const ComplexTensor ga = rng.complex_gaussian(shape);
  const ComplexTensor gb = rng.complex_gaussian(shape);
  RadamConfig c;
  c.learning_rate = 0.05;
  Radam joint(m, c), only_a(m, c), only_b(m, c);
  for (int i = 0; i < 5; ++i) {
    joint.apply_gradients({{&ga, &a}, {&gb, &b}});
    only_a.apply_gradients({{&ga, &a1}});
    only_b.apply_gradients({{&gb, &b1}});
  }
  EXPECT_EQ(a, a1);
  EXPECT_EQ(b, b1);
  EXPECT_EQ(joint.iterations(), 5u);
  ASSERT_NE(joint.state_for(a), nullptr);
  EXPECT_EQ(joint.state_for(a)->step_count, 5u);
}

TEST(ApplyGradients, EmptyListIsNoOp) {
  Rsgd opt(Manifold(ManifoldDescriptor::hermitian()), RsgdConfig{});
  opt.apply_gradients(std::span<const GradientPair>{});
  EXPECT_EQ(opt.iterations(), 0u);
}

TEST(ApplyGradients, RejectsMismatchedShapes) {
  const Manifold m(ManifoldDescriptor::stiefel());
  Rsgd opt(m, RsgdConfig{});
  Rng rng(11);
  ComplexTensor x = m.random({4, 2}, rng);
  const ComplexTensor wrong(Shape{4, 3});
  EXPECT_THROW(opt.apply_gradients({{&wrong, &x}}), ConfigError);
  ComplexTensor bad(Shape{2, 4});
  const ComplexTensor g(Shape{2, 4});
  EXPECT_THROW(opt.apply_gradients({{&g, &bad}}), ConfigError);
  EXPECT_THROW(opt.apply_gradients({{nullptr, &x}}), ConfigError);
  EXPECT_EQ(opt.state_for(x), nullptr);
}

TEST(ApplyGradients, TwoOptimizersOnACartesianProduct) {
  const Manifold dm(ManifoldDescriptor::density());
  const Manifold cm(ManifoldDescriptor::choi());
  Rng rng(12);
  ComplexTensor rho = dm.random({2, 2}, rng);
  ComplexTensor choi = cm.random({4, 2}, rng);
  const Matrix target = testing::random_hpd(2, rng);
  RadamConfig c;
  c.learning_rate = 0.02;
  Radam opt_d(dm, c), opt_c(cm, c);
  for (int i = 0; i < 200; ++i) {
    // f = ||A A^† - T||^2 + ||C||^2 with C = B B^†
    const Matrix a = rho.to_matrix();
    const Matrix b = choi.to_matrix();
    const Matrix ga = 4.0 * (a * a.adjoint() - target / target.trace()) * a;
    const Matrix gb = 4.0 * (b * b.adjoint()) * b;
    const ComplexTensor ta = ComplexTensor::from_matrix(ga);
    const ComplexTensor tb = ComplexTensor::from_matrix(gb);
    opt_d.apply_gradients({{&ta, &rho}});
    opt_c.apply_gradients({{&tb, &choi}});
    ASSERT_TRUE(dm.check_point(rho).passes());
    ASSERT_TRUE(cm.check_point(choi).passes());
  }
}

TEST(ProductLoss, GradientsMatchFiniteDifferences) {
  Rng rng(13);
  const Manifold dm(ManifoldDescriptor::density());
  const Manifold cm(ManifoldDescriptor::choi());
  acceptance::ProductLoss loss;
  loss.target_a = dm.random({2, 2}, rng).to_matrix();
  loss.target_a = loss.target_a * loss.target_a.adjoint();
  loss.target_b = testing::random_hpd(2, rng, 0.0);
  loss.target_choi = random_channel(1, 2, 14).choi;
  const ComplexTensor a = dm.random({1, 2, 2}, rng);
  const ComplexTensor b = dm.random({2, 2, 2}, rng);
  const ComplexTensor c = cm.random({1, 4, 2}, rng);
  const auto g = loss.evaluate(a, b, c);
  const double h = 1e-6;
  for (int k = 0; k < 10; ++k) {
    const ComplexTensor da = rng.complex_gaussian(a.shape());
    const ComplexTensor db = rng.complex_gaussian(b.shape());
    const ComplexTensor dc = rng.complex_gaussian(c.shape());
    const double fd = (loss.evaluate(a + h * da, b + h * db, c + h * dc).value -
                       loss.evaluate(a - h * da, b - h * db, c - h * dc).value) /
                      (2.0 * h);
    const double analytic = testing::real_inner_oracle(g.a, da) +
                            testing::real_inner_oracle(g.b, db) +
                            testing::real_inner_oracle(g.c, dc);
    EXPECT_LT(std::abs(analytic - fd), 1e-7 * std::max(1.0, std::abs(fd)));
  }
}

}  // namespace
}  // namespace qmanopt
