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

#include "qmanopt/apps/tomography.hpp"

#include <cmath>
#include <string>

#include "qmanopt/errors.hpp"
#include "qmanopt/linalg.hpp"
#include "qmanopt/random.hpp"

namespace qmanopt {
namespace {

constexpr double kProbabilityFloor = 1e-300;
constexpr double kProbabilitySumTolerance = 1e-10;

Eigen::Index qubit_dimension(std::size_t n_qubits) {
  if (n_qubits == 0) throw ConfigError("number of qubits must be at least 1");
  if (n_qubits > 8) throw ConfigError("number of qubits must be at most 8");
  return Eigen::Index{1} << n_qubits;
}

Eigen::Index dimension_of_choi(const Matrix& choi) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(choi.rows()))));
  if (choi.rows() != choi.cols() || d * d != choi.rows()) {
    throw ShapeError("Choi matrix must be d^2 x d^2, got " + std::to_string(choi.rows()) +
                     "x" + std::to_string(choi.cols()));
  }
  return d;
}

/// Gamma with p = Tr(rho Gamma): Gamma[k,l] = sum_{a,b} M[a,b] C[(l,b),(k,a)].
Matrix effective_observable(const Matrix& choi, const Matrix& m, Eigen::Index d) {
  Matrix gamma = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      Complex acc = 0.0;
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          acc += m(a, b) * choi(l * d + b, k * d + a);
        }
      }
      gamma(k, l) = acc;
    }
  }
  return gamma;
}

double trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

Matrix random_pure_state(Eigen::Index d, Rng& rng) {
  Matrix psi = rng.complex_gaussian(d, 1);
  psi /= psi.norm();
  return psi * psi.adjoint();
}

/// Checks the probability sum and renormalizes.
std::vector<double> normalized_probabilities(std::vector<double> p) {
  double sum = 0.0;
  for (double v : p) sum += v;
  if (!(std::abs(sum - 1.0) < kProbabilitySumTolerance)) {
    throw ConsistencyError("outcome probabilities sum to " + std::to_string(sum));
  }
  for (double& v : p) v = std::max(v, 0.0) / sum;
  return p;
}

}  // namespace

TetrahedralPovm build_tetrahedral_povm(std::size_t n_qubits) {
  qubit_dimension(n_qubits);
  const double r2 = std::sqrt(2.0);
  const double s[4][3] = {{0.0, 0.0, 1.0},
                          {2.0 * r2 / 3.0, 0.0, -1.0 / 3.0},
                          {-r2 / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
                          {-r2 / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
  const Complex i(0.0, 1.0);
  std::vector<Matrix> single;
  for (const auto& v : s) {
    Matrix m(2, 2);
    m << 1.0 + v[2], v[0] - i * v[1], v[0] + i * v[1], 1.0 - v[2];
    single.push_back(m / 4.0);
  }
  TetrahedralPovm povm;
  povm.n_qubits = n_qubits;
  povm.elements = single;
  for (std::size_t q = 1; q < n_qubits; ++q) {
    std::vector<Matrix> next;
    for (const Matrix& prefix : povm.elements) {
      for (const Matrix& m : single) next.push_back(kron(prefix, m));
    }
    povm.elements = std::move(next);
  }
  return povm;
}

Matrix choi_param_from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw ShapeError("at least one Kraus operator is required");
  const Eigen::Index d = kraus.front().cols();
  Matrix a(d * d, static_cast<Eigen::Index>(kraus.size()));
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].rows() != d || kraus[i].cols() != d) {
      throw ShapeError("Kraus operators must be square and of equal size");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index x = 0; x < d; ++x) {
        a(k * d + x, static_cast<Eigen::Index>(i)) = kraus[i](x, k);
      }
    }
  }
  return a;
}

Matrix choi_from_kraus(const std::vector<Matrix>& kraus) {
  const Matrix a = choi_param_from_kraus(kraus);
  return a * a.adjoint();
}

Channel random_channel(std::size_t n_qubits, std::size_t kraus_rank, std::uint64_t seed) {
  const Eigen::Index d = qubit_dimension(n_qubits);
  if (kraus_rank < 1 || static_cast<Eigen::Index>(kraus_rank) > d * d) {
    throw ConfigError("Kraus rank must lie in [1, " + std::to_string(d * d) + "], got " +
                      std::to_string(kraus_rank));
  }
  Rng rng(seed);
  const auto r = static_cast<Eigen::Index>(kraus_rank);
  const Matrix v = qr_unique(rng.complex_gaussian(d * r, d)).q;
  Channel channel;
  channel.n_qubits = n_qubits;
  for (Eigen::Index i = 0; i < r; ++i) channel.kraus.push_back(v.middleRows(i * d, d));
  channel.choi = choi_from_kraus(channel.kraus);
  return channel;
}

Channel identity_channel(std::size_t n_qubits) {
  const Eigen::Index d = qubit_dimension(n_qubits);
  Channel channel;
  channel.n_qubits = n_qubits;
  channel.kraus.push_back(Matrix::Identity(d, d));
  channel.choi = choi_from_kraus(channel.kraus);
  return channel;
}

Channel depolarizing_channel(std::size_t n_qubits) {
  const Eigen::Index d = qubit_dimension(n_qubits);
  Channel channel;
  channel.n_qubits = n_qubits;
  channel.choi = Matrix::Identity(d * d, d * d) / static_cast<double>(d);
  return channel;
}

Matrix apply_channel(const Matrix& choi, const Matrix& rho) {
  const Eigen::Index d = dimension_of_choi(choi);
  if (rho.rows() != d || rho.cols() != d) {
    throw ShapeError("state must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      out += rho(k, l) * choi.block(k * d, l * d, d, d);
    }
  }
  return out;
}

std::vector<double> outcome_probabilities(const Matrix& choi, const Matrix& rho,
                                          const TetrahedralPovm& povm) {
  const Matrix out = apply_channel(choi, rho);
  if (povm.elements.empty() || povm.elements.front().rows() != out.rows()) {
    throw ShapeError("POVM and channel dimensions differ");
  }
  std::vector<double> p;
  p.reserve(povm.elements.size());
  for (const Matrix& m : povm.elements) p.push_back(trace_product(m, out));
  return p;
}

TomographyDataset sample_dataset(const Channel& channel, std::size_t n_states,
                                 const TetrahedralPovm& povm, std::uint64_t seed) {
  if (n_states == 0) throw ConfigError("dataset needs at least one sample");
  const Eigen::Index d = dimension_of_choi(channel.choi);
  Rng rng(seed);
  TomographyDataset data;
  data.rho_in.reserve(n_states);
  data.outcome_index.reserve(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    Matrix rho = random_pure_state(d, rng);
    const std::vector<double> p =
        normalized_probabilities(outcome_probabilities(channel.choi, rho, povm));
    const double u = rng.uniform();
    std::size_t k = 0;
    double cumulative = p[0];
    while (k + 1 < p.size() && u >= cumulative) cumulative += p[++k];
    data.rho_in.push_back(std::move(rho));
    data.outcome_index.push_back(k);
  }
  return data;
}

TomographyDataset exact_probability_dataset(const Channel& channel, std::size_t n_states,
                                            const TetrahedralPovm& povm,
                                            std::uint64_t seed) {
  if (n_states == 0) throw ConfigError("dataset needs at least one input state");
  const Eigen::Index d = dimension_of_choi(channel.choi);
  Rng rng(seed);
  TomographyDataset data;
  for (std::size_t i = 0; i < n_states; ++i) {
    const Matrix rho = random_pure_state(d, rng);
    const std::vector<double> p =
        normalized_probabilities(outcome_probabilities(channel.choi, rho, povm));
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] <= 0.0) continue;
      data.rho_in.push_back(rho);
      data.outcome_index.push_back(k);
      data.weights.push_back(p[k] / static_cast<double>(n_states));
    }
  }
  return data;
}

LossAndGrad likelihood_loss_and_grad(const ComplexTensor& a,
                                     const TomographyDataset& dataset,
                                     const TetrahedralPovm& povm) {
  if (dataset.size() == 0) throw ConfigError("empty tomography dataset");
  if (dataset.outcome_index.size() != dataset.size() ||
      (!dataset.weights.empty() && dataset.weights.size() != dataset.size())) {
    throw ShapeError("tomography dataset arrays have different lengths");
  }
  if (a.rank() != 2) throw ShapeError("Choi parametrization must be a matrix");
  const Matrix am = a.to_matrix();
  const Eigen::Index d = povm.elements.empty() ? 0 : povm.elements.front().rows();
  if (d == 0 || am.rows() != d * d) {
    throw ShapeError("Choi parametrization has " + std::to_string(am.rows()) +
                     " rows, expected " + std::to_string(d * d));
  }
  const Matrix choi = am * am.adjoint();
  const std::size_t outcomes = povm.elements.size();
  std::vector<Matrix> gamma;
  gamma.reserve(outcomes);
  for (const Matrix& m : povm.elements) gamma.push_back(effective_observable(choi, m, d));

  const double uniform = 1.0 / static_cast<double>(dataset.size());
  std::vector<Matrix> z(outcomes, Matrix::Zero(d, d));
  double loss = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::size_t k = dataset.outcome_index[i];
    if (k >= outcomes) throw ShapeError("outcome index out of range");
    const double w = dataset.weights.empty() ? uniform : dataset.weights[i];
    if (w == 0.0) continue;
    const Matrix& rho = dataset.rho_in[i];
    const double p = trace_product(rho, gamma[k]);
    if (!(p > kProbabilityFloor)) {
      throw LikelihoodDegeneracyError("estimate assigns probability " + std::to_string(p) +
                                      " to observed outcome " + std::to_string(k) +
                                      " of entry " + std::to_string(i));
    }
    loss -= w * std::log(p);
    z[k] += (w / p) * rho.transpose();
  }
  Matrix e = Matrix::Zero(am.rows(), am.cols());
  for (std::size_t k = 0; k < outcomes; ++k) {
    e -= 2.0 * kron(z[k], povm.elements[k]) * am;
  }
  return {loss, ComplexTensor::from_matrix(e)};
}

double jamiolkowski_distance(const Matrix& c1, const Matrix& c2, std::size_t n_qubits) {
  const Eigen::Index d = qubit_dimension(n_qubits);
  if (c1.rows() != d * d || c1.cols() != d * d || c2.rows() != d * d ||
      c2.cols() != d * d) {
    throw ShapeError("Choi matrices must both be " + std::to_string(d * d) + "x" +
                     std::to_string(d * d));
  }
  return trace_norm(c1 - c2) / static_cast<double>(d);
}

}  // namespace qmanopt
