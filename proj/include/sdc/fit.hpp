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

// Least-squares fit of the correlation coefficient k and the imperfection
// offset s to (|kappa_A|, MI) data.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/numeric_text.hpp"
#include "sdc/protocol.hpp"

namespace sdc {

struct FitPoint {
  double kappa_abs = 0.0;
  double mi = 0.0;
};

struct FitResult {
  double k_hat = 0.0;
  double s_hat = 0.0;
  double residual_sum_squares = 0.0;
  int n_points = 0;
};

inline std::string fit_csv(const FitResult& r) {
  return "k_hat,s_hat,rss,n_points\n" + format_real(r.k_hat) + ',' + format_real(r.s_hat) + ',' +
         format_real(r.residual_sum_squares) + ',' + std::to_string(r.n_points) + '\n';
}

struct FitOptions {
  /// Coarse spacing of the k grid over [-1, 1].
  double k_step = 0.01;
  /// Each pass re-grids +-1 previous step around the incumbent at a tenth
  /// of the spacing.
  int refinement_passes = 3;
};

namespace detail {

struct Candidate {
  double k;
  double s;
  double rss;
};

// For fixed k the model is linear in s (up to the floor at zero), so the
// optimal offset is the mean residual.
inline Candidate profile_offset(std::span<const FitPoint> points, SchemeVariant variant, double k) {
  double mean_gap = 0.0;
  for (const auto& p : points) mean_gap += closed_form_mi(variant, p.kappa_abs, k, 0.0) - p.mi;
  mean_gap /= static_cast<double>(points.size());
  const double s = std::max(mean_gap, 0.0);
  double rss = 0.0;
  for (const auto& p : points) {
    const double r = closed_form_mi(variant, p.kappa_abs, k, s) - p.mi;
    rss += r * r;
  }
  return {k, s, rss};
}

inline bool better(const Candidate& a, const Candidate& b) {
  const double scale = std::max(a.rss, b.rss);
  if (std::abs(a.rss - b.rss) > 1e-14 * scale + 1e-30) return a.rss < b.rss;
  if (std::abs(a.k) != std::abs(b.k)) return std::abs(a.k) < std::abs(b.k);
  return a.s < b.s;
}

}  // namespace detail

/// Minimizes sum_i (closed_form(kappa_i, k, s) - mi_i)^2 over k in [-1, 1]
/// and s >= 0. k is searched on a bounded grid with local refinement; s is
/// profiled out exactly for each candidate k.
inline FitResult fit_k_s(std::span<const FitPoint> points, SchemeVariant variant,
                         const FitOptions& options = {}) {
  if (points.size() < 2) throw DomainError("fit_k_s: need at least 2 points");
  for (const auto& p : points) {
    if (!(p.kappa_abs > 0.0 && p.kappa_abs <= 1.0))
      throw DomainError("fit_k_s: kappa_abs " + format_real(p.kappa_abs) + " outside (0, 1]");
    if (!std::isfinite(p.mi)) throw DomainError("fit_k_s: non-finite mutual information value");
  }
  if (!(options.k_step > 0.0 && options.k_step <= 2.0) || options.refinement_passes < 0)
    throw DomainError("fit_k_s: invalid grid options");

  const int coarse = static_cast<int>(std::round(2.0 / options.k_step));
  detail::Candidate best = detail::profile_offset(points, variant, -1.0);
  for (int i = 1; i <= coarse; ++i) {
    const double k = std::min(-1.0 + i * options.k_step, 1.0);
    const auto c = detail::profile_offset(points, variant, k);
    if (detail::better(c, best)) best = c;
  }

  double step = options.k_step;
  for (int pass = 0; pass < options.refinement_passes; ++pass) {
    const double center = best.k;
    step /= 10.0;
    for (int j = -10; j <= 10; ++j) {
      const double k = center + j * step;
      if (k < -1.0 || k > 1.0 || j == 0) continue;
      const auto c = detail::profile_offset(points, variant, k);
      if (detail::better(c, best)) best = c;
    }
  }
  return {best.k, best.s, best.rss, static_cast<int>(points.size())};
}

}  // namespace sdc
