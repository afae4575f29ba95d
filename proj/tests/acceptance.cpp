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

// Acceptance checks. One line per criterion; exit status is nonzero if any
// criterion fails its tolerance or its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sdc/sdc.hpp"

using namespace sdc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_ms, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = ms < budget_ms;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.3f ms, budget %.0f ms%s)\n", pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), ms, budget_ms, in_time ? "" : ", OVER BUDGET");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

JointSpectrum spectrum_with_k(double k) {
  JointSpectrum spec;
  spec.k = k;
  return spec;
}

double time_for(const JointSpectrum& spec, double kappa) {
  return std::sqrt(-2.0 * std::log(kappa) / (spec.c_aa * spec.delta_n * spec.delta_n));
}

std::vector<double> fitted_grid() {
  std::vector<double> out;
  for (int i = 0; i < 20; ++i) out.push_back(0.1 * i);
  return out;
}

}  // namespace

int main() {
  criterion(1, "three-state endpoint", 1.0, [] {
    const double v = closed_form_i3(0.163, -1.0, 0.0749);
    const double limit = std::log2(3.0) - 0.0749;
    return Outcome{std::abs(v - limit) < 1e-5 && std::abs(v - 1.52) <= 0.02,
                   fmt("I3 = %.10f, limit %.10f", v, limit)};
  });

  criterion(2, "four-state endpoint", 1.0, [] {
    const double v = closed_form_i4(0.163, -0.99995, 0.0975);
    return Outcome{std::abs(v - 1.9012) <= 0.0005 && std::abs(v - 1.89) <= 0.05,
                   fmt("I4 = %.10f, target 1.9012 +- 0.0005", v)};
  });

  criterion(3, "flat MI at perfect anticorrelation", 10.0, [] {
    double spread = 0.0;
    for (auto variant : {SchemeVariant::ThreeState, SchemeVariant::FourState}) {
      double lo = 1e9, hi = -1e9;
      for (int i = 0; i <= 900; ++i) {
        const double v = closed_form_mi(variant, 0.1 + 0.001 * i, -1.0, 0.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      spread = std::max(spread, hi - lo);
    }
    return Outcome{spread < 1e-9, fmt("max spread %.3g bits", spread)};
  });

  criterion(4, "Born-rule MI equals closed forms", 1000.0, [] {
    double worst = 0.0;
    for (double k : {-1.0, -0.5, 0.0, 0.5}) {
      const auto spec = spectrum_with_k(k);
      for (int i = 1; i <= 10; ++i) {
        const double kappa = 0.1 * i;
        const double t = i == 10 ? 0.0 : time_for(spec, kappa);
        for (auto scheme : {EncodingScheme::three_state(), EncodingScheme::four_state()}) {
          const double born = mutual_information(
              scheme, simulate_protocol(spec, {t, t}, scheme, NoiseOrder::BeforeEncoding));
          worst = std::max(worst, std::abs(born - closed_form_mi(scheme.variant(), kappa, k, 0.0)));
        }
      }
    }
    return Outcome{worst < 1e-10, fmt("max deviation %.3g bits", worst)};
  });

  criterion(5, "capacity chain", 1000.0, [] {
    double worst = 0.0;
    const JointSpectrum spec;
    for (int i = 0; i <= 40; ++i) {
      const double t = 0.075 * i;
      const double kappa = std::abs(kappa_a(spec, t));
      worst = std::max(worst, std::abs(dense_coding_capacity(evolve_pre_encoding(spec, t)) -
                                       capacity_pre_encoding(kappa)));
      worst = std::max(worst, std::abs(capacity_bob_noise(kappa, 0.0) - capacity_pre_encoding(kappa * kappa)));
    }
    // N depends on k only through k^2; the inversion returns the
    // anticorrelated branch.
    for (int i = 1; i <= 19; ++i) {
      const double kappa = 0.05 * i;
      for (int j = 0; j <= 10; ++j) {
        const double k = -1.0 + 0.1 * j;
        worst = std::max(worst, std::abs(capacity_from_n(non_markovianity(kappa, k), kappa) -
                                         capacity_bob_noise(kappa, k)));
      }
    }
    return Outcome{worst < 1e-10, fmt("max deviation %.3g bits", worst)};
  });

  criterion(6, "perfect anticorrelation restores Bell states", 10.0, [] {
    const auto spec = spectrum_with_k(-1.0);
    double worst = 1.0;
    for (double t : {0.3, 1.0, 1.9, 3.0}) {
      const auto pre = evolve_pre_encoding(spec, t);
      for (auto label : kBellLabels) {
        const auto encoded = apply_pauli(pre, encoding_pauli(label), Party::Alice);
        const auto out = evolve_post_encoding(encoded, spec, {t, t}, PhaseHandling::Compensated);
        worst = std::min(worst, out.fidelity_with(bell_vector(label)));
      }
    }
    return Outcome{worst >= 1.0 - 1e-10, fmt("min fidelity 1 - %.3g", 1.0 - worst)};
  });

  criterion(7, "concurrence equals |kappa_A|", 100.0, [] {
    const JointSpectrum spec;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = 0.15 * i;
      worst = std::max(worst, std::abs(concurrence(evolve_pre_encoding(spec, t)) -
                                       std::abs(kappa_a(spec, t))));
    }
    return Outcome{worst < 1e-10, fmt("max deviation %.3g", worst)};
  });

  criterion(8, "noise reordering", 1000.0, [] {
    double worst3 = 0.0, worst4 = -1e9;
    for (double k : {-1.0, -0.75, -0.5, -0.25, 0.0}) {
      const auto spec = spectrum_with_k(k);
      for (int i = 1; i <= 9; ++i) {
        const double t = time_for(spec, 0.1 * i);
        for (auto scheme : {EncodingScheme::three_state(), EncodingScheme::four_state()}) {
          const double before = mutual_information(
              scheme, simulate_protocol(spec, {t, t}, scheme, NoiseOrder::BeforeEncoding));
          const double after = mutual_information(
              scheme, simulate_protocol(spec, {t, t}, scheme, NoiseOrder::AfterEncoding));
          if (scheme.variant() == SchemeVariant::ThreeState)
            worst3 = std::max(worst3, std::abs(after - before));
          else
            worst4 = std::max(worst4, after - before);
        }
      }
    }
    return Outcome{worst3 < 1e-10 && worst4 <= 1e-12,
                   fmt("3-state max |diff| %.3g; 4-state max(after - before) %.3g", worst3, worst4)};
  });

  criterion(9, "fit recovery", 30000.0, [] {
    bool ok = true;
    std::string detail;
    struct Case {
      SchemeVariant variant;
      double k, s;
    };
    for (const Case c : {Case{SchemeVariant::ThreeState, -1.0, 0.0749},
                         Case{SchemeVariant::FourState, -0.99995, 0.0975}}) {
      const auto spec = spectrum_with_k(c.k);
      const auto scheme = EncodingScheme::make(c.variant);
      const auto grid = fitted_grid();

      std::vector<FitPoint> exact;
      for (double t : grid) {
        const double kappa = std::abs(kappa_a(spec, t));
        exact.push_back({kappa, closed_form_mi(c.variant, kappa, c.k, c.s)});
      }
      const auto r = fit_k_s(exact, c.variant);
      // Final grid spacing is 1e-5 in k.
      ok = ok && std::abs(r.k_hat - c.k) <= 1e-5 && std::abs(r.s_hat - c.s) <= 1e-5;

      const auto rows = run_sweep(spec, grid, scheme, 10000, 1000, 42, {c.s, NoiseOrder::BeforeEncoding});
      std::vector<FitPoint> mc;
      for (const auto& row : rows) mc.push_back({row.kappa_abs, row.mi_mc_mean});
      const auto m = fit_k_s(mc, c.variant);
      ok = ok && std::abs(m.s_hat - c.s) <= 0.02;

      char buf[256];
      std::snprintf(buf, sizeof buf, "%s exact (%.6f, %.6f) mc (%.6f, %.6f); ",
                    std::string(to_string(c.variant)).c_str(), r.k_hat, r.s_hat, m.k_hat, m.s_hat);
      detail += buf;
    }
    return Outcome{ok, detail};
  });

  criterion(10, "tomography pipeline", 5000.0, [] {
    std::mt19937_64 rng(2026);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      Eigen::Matrix4cd a;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = Complex{g(rng), g(rng)};
      TwoQubitMatrix m = a * a.adjoint();
      m /= m.trace().real();
      const auto rho = DensityMatrix::from_matrix(m);
      const auto counts = expected_tomography_counts(rho, 1.0);
      const auto back = reconstruct_linear_inversion(std::span<const double, kTomographySettings>(counts), 1.0);
      worst = std::max(worst, (back.matrix() - rho.matrix()).norm());
    }
    const JointSpectrum spec;
    bool monotone = true;
    double prev = 2.0, curve_dev = 0.0;
    for (int i = 0; i <= 30; ++i) {
      const double t = 0.1 * i;
      const double c = tomographic_concurrence(spec, t);
      monotone = monotone && c < prev;
      prev = c;
      curve_dev = std::max(curve_dev, std::abs(c - std::abs(kappa_a(spec, t))));
    }
    return Outcome{worst < 1e-10 && monotone && curve_dev < 1e-10,
                   fmt("identity deviation %.3g; concurrence curve deviation %.3g", worst, curve_dev) +
                       (monotone ? ", monotone" : ", NOT monotone")};
  });

  criterion(11, "Monte Carlo statistics", 60000.0, [] {
    // Scaling, at a point with a nondegenerate channel.
    const auto scheme4 = EncodingScheme::four_state();
    const auto mid = conditional_probabilities(scheme4, 0.5);
    const double std_small = estimate_mi_with_errors(mid, scheme4, 2500, 1000, 42).std;
    const double std_large = estimate_mi_with_errors(mid, scheme4, 10000, 1000, 42).std;
    const double ratio = std_large / std_small;
    const bool scaling_ok = ratio >= 0.4 && ratio <= 0.6;

    // Error-bar magnitude at n = 1e4 along the fitted curves.
    double largest = 0.0;
    for (const auto& [variant, k] : {std::pair{SchemeVariant::ThreeState, -1.0},
                                     std::pair{SchemeVariant::FourState, -0.99995}}) {
      const auto rows = run_sweep(spectrum_with_k(k), fitted_grid(), EncodingScheme::make(variant),
                                  10000, 1000, 42);
      for (const auto& r : rows) largest = std::max(largest, r.mi_mc_std);
    }
    const bool magnitude_ok = largest >= 0.01 && largest <= 0.05;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "std ratio n->4n = %.3f (%s); largest std on fitted curves at n=1e4 = %.3g bits "
                  "(%s, want 0.01-0.05)",
                  ratio, scaling_ok ? "ok" : "out of range", largest,
                  magnitude_ok ? "ok" : "out of range");
    return Outcome{scaling_ok && magnitude_ok, buf};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
