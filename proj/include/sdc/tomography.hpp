// Copyright 2026 The sdcmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-qubit state tomography by linear inversion over the sixteen product
// projectors {H, V, D, L} (x) {H, V, D, L}.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "sdc/core.hpp"
#include "sdc/errors.hpp"
#include "sdc/sampling.hpp"

namespace sdc {

inline constexpr int kTomographySettings = 16;

using TomographyDesign = Eigen::Matrix<double, kTomographySettings, kTomographySettings>;
using TomographyVector = Eigen::Matrix<double, kTomographySettings, 1>;

/// Single-qubit analyzer states, in order H, V, D = (H+V)/sqrt2, L = (H+iV)/sqrt2.
inline std::array<Eigen::Vector2cd, 4> analyzer_states() {
  const double a = 1.0 / std::sqrt(2.0);
  return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0), Eigen::Vector2cd(a, a),
          Eigen::Vector2cd(Complex{a, 0.0}, Complex{0.0, a})};
}

/// Setting names ("HH", "HV", ..., "LL"); Alice's analyzer is the slow index.
inline std::string tomography_setting_name(int setting) {
  static constexpr char kNames[] = {'H', 'V', 'D', 'L'};
  return {kNames[setting / 4], kNames[setting % 4]};
}

inline std::array<TwoQubitMatrix, kTomographySettings> tomography_projectors() {
  const auto states = analyzer_states();
  std::array<TwoQubitMatrix, kTomographySettings> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out[4 * a + b] = kron(states[a] * states[a].adjoint(), states[b] * states[b].adjoint());
  return out;
}

/// Pauli product basis sigma_i (x) sigma_j, i, j in (I, X, Y, Z).
inline std::array<TwoQubitMatrix, kTomographySettings> pauli_product_basis() {
  constexpr std::array<PauliLabel, 4> order = {PauliLabel::I, PauliLabel::X, PauliLabel::Y,
                                               PauliLabel::Z};
  std::array<TwoQubitMatrix, kTomographySettings> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = kron(pauli_matrix(order[i]), pauli_matrix(order[j]));
  return out;
}

/// Maps Pauli coordinates r (rho = 1/4 sum r_ij sigma_i (x) sigma_j) to the
/// sixteen projector probabilities.
inline TomographyDesign tomography_design() {
  const auto projectors = tomography_projectors();
  const auto paulis = pauli_product_basis();
  TomographyDesign d;
  for (int row = 0; row < kTomographySettings; ++row)
    for (int col = 0; col < kTomographySettings; ++col)
      d(row, col) = 0.25 * (projectors[row] * paulis[col]).trace().real();
  return d;
}

/// Inverse of the design matrix, computed and checked once.
inline const TomographyDesign& tomography_inverse() {
  static const TomographyDesign inverse = [] {
    const Eigen::FullPivLU<TomographyDesign> lu(tomography_design());
    if (!lu.isInvertible()) throw InvariantError("tomography design matrix is singular");
    return TomographyDesign(lu.inverse());
  }();
  return inverse;
}

/// n * <P_k> for each setting.
inline std::array<double, kTomographySettings> expected_tomography_counts(const DensityMatrix& rho,
                                                                          double n_per_projector) {
  const auto projectors = tomography_projectors();
  std::array<double, kTomographySettings> out{};
  for (int k = 0; k < kTomographySettings; ++k)
    out[k] = n_per_projector * std::clamp(rho.expectation(projectors[k]), 0.0, 1.0);
  return out;
}

/// Binomial(n, <P_k>) counts for each of the sixteen settings.
inline std::array<std::int64_t, kTomographySettings> tomography_counts(const DensityMatrix& rho,
                                                                       std::int64_t n_per_projector,
                                                                       std::uint64_t seed) {
  if (n_per_projector <= 0) throw DomainError("tomography_counts: n_per_projector must be > 0");
  const auto projectors = tomography_projectors();
  Rng rng = make_stream(seed);
  std::array<std::int64_t, kTomographySettings> out{};
  for (int k = 0; k < kTomographySettings; ++k) {
    std::binomial_distribution<std::int64_t> draw(n_per_projector,
                                                  std::clamp(rho.expectation(projectors[k]), 0.0, 1.0));
    out[k] = draw(rng);
  }
  return out;
}

/// Closest density matrix in Frobenius norm to a unit-trace Hermitian
/// estimate (Smolin, Gambetta and Smith, PRL 108, 070502). Negative
/// eigenvalues are zeroed and their weight is taken evenly from the
/// remaining smaller ones.
inline TwoQubitMatrix nearest_physical_state(const TwoQubitMatrix& estimate) {
  Eigen::SelfAdjointEigenSolver<TwoQubitMatrix> eig(estimate);
  const Eigen::Vector4d mu = eig.eigenvalues();  // ascending
  Eigen::Vector4d lambda = Eigen::Vector4d::Zero();
  double carried = 0.0;
  int first = 0;
  for (; first < 4; ++first) {
    if (mu[first] + carried / (4 - first) >= 0.0) break;
    carried += mu[first];
  }
  if (first == 4) throw DomainError("nearest_physical_state: estimate has no positive weight");
  for (int j = first; j < 4; ++j) lambda[j] = mu[j] + carried / (4 - first);
  return eig.eigenvectors() * lambda.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

/// Linear inversion of measured frequencies. The raw estimate is
/// trace-normalized and mapped to the nearest physical state, which finite
/// counts generally require.
inline DensityMatrix reconstruct_linear_inversion(std::span<const double, kTomographySettings> counts,
                                                  double n_per_projector) {
  if (!(n_per_projector > 0.0))
    throw DomainError("reconstruct_linear_inversion: n_per_projector must be > 0");
  TomographyVector freq;
  for (int k = 0; k < kTomographySettings; ++k) {
    if (!(counts[k] >= 0.0)) throw DomainError("reconstruct_linear_inversion: negative count");
    freq[k] = counts[k] / n_per_projector;
  }
  const TomographyVector coords = tomography_inverse() * freq;
  const auto paulis = pauli_product_basis();
  TwoQubitMatrix raw = TwoQubitMatrix::Zero();
  for (int k = 0; k < kTomographySettings; ++k) raw += 0.25 * coords[k] * paulis[k];
  raw = 0.5 * (raw + raw.adjoint());
  const double trace = raw.trace().real();
  if (!(trace > 0.0)) throw DomainError("reconstruct_linear_inversion: counts give zero trace");
  raw /= trace;
  return DensityMatrix::from_matrix(nearest_physical_state(raw));
}

inline DensityMatrix reconstruct_linear_inversion(
    std::span<const std::int64_t, kTomographySettings> counts, std::int64_t n_per_projector) {
  std::array<double, kTomographySettings> as_real{};
  for (int k = 0; k < kTomographySettings; ++k) as_real[k] = static_cast<double>(counts[k]);
  return reconstruct_linear_inversion(std::span<const double, kTomographySettings>(as_real),
                                      static_cast<double>(n_per_projector));
}

}  // namespace sdc
