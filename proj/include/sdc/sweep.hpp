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

// Noise sweeps: mutual information and entanglement against Alice's
// dephasing time, with Monte Carlo error bars.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdc/environment.hpp"
#include "sdc/errors.hpp"
#include "sdc/protocol.hpp"
#include "sdc/sampling.hpp"
#include "sdc/tomography.hpp"

namespace sdc {

struct SweepRow {
  double t_a = 0.0;
  double kappa_abs = 0.0;
  double concurrence = 0.0;
  double mi_theory = 0.0;
  double mi_mc_mean = 0.0;
  double mi_mc_std = 0.0;
  SchemeVariant scheme = SchemeVariant::ThreeState;
};

struct SweepOptions {
  double s = 0.0;
  NoiseOrder noise_order = NoiseOrder::BeforeEncoding;
};

/// Concurrence of the pre-encoding state as seen through tomography on its
/// exact (noise-free) expected counts.
inline double tomographic_concurrence(const JointSpectrum& spec, double t_a) {
  const DensityMatrix rho = evolve_pre_encoding(spec, t_a);
  const auto counts = expected_tomography_counts(rho, 1.0);
  return concurrence(reconstruct_linear_inversion(std::span<const double, kTomographySettings>(counts), 1.0));
}

/// Exact model MI (minus s) at one dephasing time with t_b = t_a. Uses the
/// closed forms where they apply (equal variances, noise before encoding,
/// uniform priors) and the Born-rule table otherwise.
inline double theory_mi(const JointSpectrum& spec, double t_a, const EncodingScheme& scheme,
                        const SweepOptions& options) {
  const bool closed_form_regime = spec.c_aa == spec.c_bb &&
                                  options.noise_order == NoiseOrder::BeforeEncoding &&
                                  scheme.has_uniform_priors();
  if (closed_form_regime)
    return closed_form_mi(scheme.variant(), std::abs(kappa_a(spec, t_a)), spec.k, options.s);
  const auto table = simulate_protocol(spec, {t_a, t_a}, scheme, options.noise_order);
  return mutual_information(scheme, table, options.s);
}

/// One row per grid time. Row i draws its Monte Carlo trials from streams
/// (seed, i, trial), so rows can be evaluated in any order.
inline std::vector<SweepRow> run_sweep(const JointSpectrum& spec, std::span<const double> time_grid,
                                       const EncodingScheme& scheme, std::int64_t n_per_input,
                                       int trials, std::uint64_t seed,
                                       const SweepOptions& options = {}) {
  spec.validate();
  if (time_grid.empty()) throw DomainError("run_sweep: empty time grid");
  std::vector<SweepRow> rows;
  rows.reserve(time_grid.size());
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    if (!(t >= 0.0)) throw DomainError("run_sweep: negative time " + format_real(t));
    SweepRow row;
    row.t_a = t;
    row.kappa_abs = std::abs(kappa_a(spec, t));
    row.concurrence = tomographic_concurrence(spec, t);
    row.mi_theory = theory_mi(spec, t, scheme, options);
    const auto table = simulate_protocol(spec, {t, t}, scheme, options.noise_order);
    const auto mc = estimate_mi_with_errors(table, scheme, n_per_input, trials, seed, i);
    row.mi_mc_mean = std::max(mc.mean - options.s, 0.0);
    row.mi_mc_std = mc.std;
    row.scheme = scheme.variant();
    rows.push_back(row);
  }
  return rows;
}

inline constexpr const char* kSweepCsvHeader =
    "t_a,kappa_abs,concurrence,mi_theory,mi_mc_mean,mi_mc_std,scheme";

inline std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = std::string(kSweepCsvHeader) + '\n';
  for (const auto& r : rows) {
    out += format_real(r.t_a) + ',' + format_real(r.kappa_abs) + ',' + format_real(r.concurrence) +
           ',' + format_real(r.mi_theory) + ',' + format_real(r.mi_mc_mean) + ',' +
           format_real(r.mi_mc_std) + ',' + std::string(to_string(r.scheme)) + '\n';
  }
  return out;
}

}  // namespace sdc
