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

// Correlated Gaussian frequency environments and the dephasing they induce.
//
// Each photon's polarization picks up a frequency-dependent relative phase
// exp(i * omega * t * delta_n) between H and V. The two frequencies are
// jointly Gaussian with means omega0 / 2, variances c_aa and c_bb, and
// correlation coefficient k. Because the environment is static over the
// lifetime of a photon pair, every dephasing history reduces to one
// characteristic-function evaluation of that Gaussian.

#pragma once

#include <cmath>
#include <complex>

#include "sdc/core.hpp"
#include "sdc/errors.hpp"

namespace sdc {

struct JointSpectrum {
  double omega0 = 2.0;
  double c_aa = 1.0;
  double c_bb = 1.0;
  double k = -1.0;
  double delta_n = 1.0;

  void validate() const {
    if (!std::isfinite(omega0)) throw DomainError("omega0 must be finite");
    if (!(c_aa > 0.0) || !std::isfinite(c_aa)) throw DomainError("c_aa must be > 0");
    if (!(c_bb > 0.0) || !std::isfinite(c_bb)) throw DomainError("c_bb must be > 0");
    if (!(k >= -1.0 && k <= 1.0)) throw DomainError("k must lie in [-1, 1]");
    if (!std::isfinite(delta_n)) throw DomainError("delta_n must be finite");
  }

  double mean_frequency() const noexcept { return 0.5 * omega0; }
  double cross_covariance() const noexcept { return k * std::sqrt(c_aa * c_bb); }
};

struct DephasingTimes {
  double t_a = 0.0;
  double t_b = 0.0;

  void validate() const {
    if (!(t_a >= 0.0) || !std::isfinite(t_a)) throw DomainError("t_a must be >= 0");
    if (!(t_b >= 0.0) || !std::isfinite(t_b)) throw DomainError("t_b must be >= 0");
  }
};

enum class PhaseHandling {
  Raw,
  /// Drop the deterministic phase set by the mean frequencies; the receiver
  /// is assumed to track it.
  Compensated,
};

/// E[exp(i delta_n (alice_time * omega_A + bob_time * omega_B))] over the
/// joint spectrum. Times may be negative: a sign flip stands for a Pauli
/// that exchanged H and V on that qubit between noise and readout.
inline ComplexAmplitude gaussian_phase_average(const JointSpectrum& spec, double alice_time,
                                               double bob_time,
                                               PhaseHandling phase = PhaseHandling::Raw) {
  const double ta = spec.delta_n * alice_time;
  const double tb = spec.delta_n * bob_time;
  const double variance =
      spec.c_aa * ta * ta + spec.c_bb * tb * tb + 2.0 * spec.cross_covariance() * ta * tb;
  const double magnitude = std::exp(-0.5 * std::max(variance, 0.0));
  if (phase == PhaseHandling::Compensated) return {magnitude, 0.0};
  return std::polar(magnitude, spec.mean_frequency() * (ta + tb));
}

/// Decoherence function after Alice's local noise of duration t_a.
inline ComplexAmplitude kappa_a(const JointSpectrum& spec, double t_a) {
  if (!(t_a >= 0.0)) throw DomainError("kappa_a: t_a must be >= 0");
  return gaussian_phase_average(spec, t_a, 0.0);
}

/// Joint decoherence function h(t_a, t_b) after both local noises.
inline ComplexAmplitude joint_dephasing_factor(const JointSpectrum& spec,
                                               const DephasingTimes& times) {
  times.validate();
  return gaussian_phase_average(spec, times.t_a, times.t_b);
}

/// Shared state after Alice's noise acts on |Phi+>:
/// 1/2 [|HH><HH| + kappa |HH><VV| + kappa* |VV><HH| + |VV><VV|].
inline DensityMatrix evolve_pre_encoding(const JointSpectrum& spec, double t_a) {
  const ComplexAmplitude kappa = kappa_a(spec, t_a);
  TwoQubitMatrix m = TwoQubitMatrix::Zero();
  m(HH, HH) = 0.5;
  m(VV, VV) = 0.5;
  m(HH, VV) = 0.5 * kappa;
  m(VV, HH) = 0.5 * std::conj(kappa);
  return DensityMatrix::from_matrix(m);
}

/// Averages rho over the environment after both qubits have dephased for the
/// given (signed) durations. Element (i, j) is multiplied by the Gaussian
/// average of its accumulated phase; populations are untouched.
inline DensityMatrix correlated_dephasing(const DensityMatrix& rho, const JointSpectrum& spec,
                                          double alice_time, double bob_time,
                                          PhaseHandling phase = PhaseHandling::Raw) {
  // +1 for H, 0 for V on each qubit of a basis index.
  const auto alice_h = [](int idx) { return (idx >> 1) == 0 ? 1 : 0; };
  const auto bob_h = [](int idx) { return (idx & 1) == 0 ? 1 : 0; };
  TwoQubitMatrix out = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int da = alice_h(i) - alice_h(j);
      const int db = bob_h(i) - bob_h(j);
      if (da == 0 && db == 0) continue;
      out(i, j) *= gaussian_phase_average(spec, da * alice_time, db * bob_time, phase);
    }
  }
  return DensityMatrix::from_matrix(out);
}

/// Applies Bob's stage of duration times.t_b to a state that has already been
/// through Alice's stage (duration times.t_a) and one Pauli encoding.
///
/// Only one anti-diagonal coherence pair may be present. The element whose
/// Bob ket is H and bra is V carried Alice's phase with the same sign before
/// encoding, so conditioning the joint Gaussian on Alice's stage gives the
/// factor h / kappa_A, evaluated directly in log space.
inline DensityMatrix evolve_post_encoding(const DensityMatrix& rho_encoded,
                                          const JointSpectrum& spec, const DephasingTimes& times,
                                          PhaseHandling phase = PhaseHandling::Raw) {
  times.validate();
  constexpr double kStructureTol = 1e-10;
  const auto& m = rho_encoded.matrix();
  const bool phi_pair = std::abs(m(HH, VV)) > kStructureTol;
  const bool psi_pair = std::abs(m(VH, HV)) > kStructureTol;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const bool is_phi = i == HH && j == VV;
      const bool is_psi = i == HV && j == VH;
      if (!is_phi && !is_psi && std::abs(m(i, j)) > kStructureTol)
        throw StructureError("evolve_post_encoding: coherence outside the anti-diagonal pairs");
    }
  }
  if (phi_pair && psi_pair)
    throw StructureError("evolve_post_encoding: coherences in both Bell sectors");

  const double ta = spec.delta_n * times.t_a;
  const double tb = spec.delta_n * times.t_b;
  const double log_gain = -0.5 * (spec.c_bb * tb * tb + 2.0 * spec.cross_covariance() * ta * tb);
  double phase_shift = spec.mean_frequency() * tb;
  if (phase == PhaseHandling::Compensated) phase_shift -= spec.mean_frequency() * (ta + tb);

  TwoQubitMatrix out = m;
  const auto update = [&](int row, int col) {
    const Complex c = m(row, col);
    if (c == Complex{}) return;
    const Complex next =
        std::polar(std::exp(std::log(std::abs(c)) + log_gain), std::arg(c) + phase_shift);
    out(row, col) = next;
    out(col, row) = std::conj(next);
  };
  if (psi_pair) {
    update(VH, HV);
  } else {
    update(HH, VV);
  }
  return DensityMatrix::from_matrix(out);
}

/// N = kappa^(1 - k^2) - kappa, evaluated pointwise.
inline double non_markovianity(double kappa_abs, double k) {
  if (!(kappa_abs > 0.0 && kappa_abs < 1.0))
    throw DomainError("non_markovianity: kappa_abs must lie in (0, 1)");
  if (!(k >= -1.0 && k <= 1.0)) throw DomainError("non_markovianity: k must lie in [-1, 1]");
  return std::pow(kappa_abs, 1.0 - k * k) - kappa_abs;
}

/// Dense-coding capacity with Bob's compensating noise, written in terms of
/// the non-Markovianity n instead of k.
inline double capacity_from_n(double n, double kappa_abs) {
  if (kappa_abs == 0.0 || kappa_abs == 1.0)
    throw DomainError("capacity_from_n: kappa_abs in {0, 1} makes the logarithm ratio singular");
  if (!(kappa_abs > 0.0 && kappa_abs < 1.0))
    throw DomainError("capacity_from_n: kappa_abs must lie in (0, 1)");
  constexpr double kSlack = 1e-12;
  if (!(n >= 0.0 && n + kappa_abs <= 1.0 + kSlack))
    throw DomainError("capacity_from_n: n must lie in [0, 1 - kappa_abs]");
  const double ratio = std::clamp(std::log(std::min(n + kappa_abs, 1.0)) / std::log(kappa_abs),
                                  0.0, 1.0);
  const double abs_k = std::sqrt(1.0 - ratio);
  const double visibility = std::pow(kappa_abs, 2.0 * (1.0 - abs_k));
  return 2.0 - binary_entropy(0.5 * (1.0 + visibility));
}

}  // namespace sdc
