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

// Finite counting statistics and parametric-bootstrap error bars.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/protocol.hpp"

namespace sdc {

using Rng = std::mt19937_64;

/// Independent random stream for (seed, indices...). Every unit of work
/// (sweep row, Monte Carlo trial) draws from its own stream so results do
/// not depend on execution order.
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> indices = {}) {
  std::vector<std::uint32_t> words;
  const auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto i : indices) push(i);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Outcome counts per encoded symbol over the four Bell labels.
struct CountTable {
  std::vector<BellLabel> inputs;
  std::vector<std::array<std::int64_t, 4>> counts;
  std::int64_t n_total_per_input = 0;

  /// Empirical p(y|x).
  ConditionalTable frequencies() const {
    std::vector<ConditionalTable::Row> rows;
    const double n = static_cast<double>(n_total_per_input);
    for (const auto& c : counts) {
      ConditionalTable::Row row{};
      for (int y = 0; y < 4; ++y) row[y] = static_cast<double>(c[y]) / n;
      rows.push_back(row);
    }
    return ConditionalTable(inputs, std::move(rows));
  }
};

/// One multinomial draw of `n` shots, as a chain of conditional binomials.
inline std::array<std::int64_t, 4> sample_multinomial(const std::array<double, 4>& probs,
                                                      std::int64_t n, Rng& rng) {
  std::array<std::int64_t, 4> out{};
  std::int64_t remaining = n;
  double mass = 1.0;
  for (int y = 0; y < 4 && remaining > 0; ++y) {
    if (probs[y] <= 0.0) continue;
    const double q = mass > 0.0 ? std::min(probs[y] / mass, 1.0) : 1.0;
    if (y == 3 || q >= 1.0) {
      out[y] = remaining;
      remaining = 0;
      break;
    }
    std::binomial_distribution<std::int64_t> draw(remaining, q);
    out[y] = draw(rng);
    remaining -= out[y];
    mass -= probs[y];
  }
  // Leftover shots can only come from rounding in `mass`; give them to the
  // last outcome with support.
  if (remaining > 0) {
    for (int y = 3; y >= 0; --y) {
      if (probs[y] > 0.0) {
        out[y] += remaining;
        break;
      }
    }
  }
  return out;
}

inline CountTable sample_counts(const ConditionalTable& table, std::int64_t n_per_input, Rng& rng) {
  if (n_per_input <= 0) throw DomainError("sample_counts: n_per_input must be > 0");
  CountTable out{table.inputs(), {}, n_per_input};
  for (const auto& row : table.rows()) out.counts.push_back(sample_multinomial(row, n_per_input, rng));
  return out;
}

/// Deterministic in (table, n_per_input, seed).
inline CountTable sample_counts(const ConditionalTable& table, std::int64_t n_per_input,
                                std::uint64_t seed) {
  Rng rng = make_stream(seed);
  return sample_counts(table, n_per_input, rng);
}

struct MiEstimate {
  double mean = 0.0;
  double std = 0.0;
};

/// Parametric bootstrap: `trials` multinomial resamples of the model table,
/// plug-in MI (s = 0) on each, sample mean and standard deviation.
/// `stream_id` separates callers that share a seed (e.g. sweep rows).
inline MiEstimate estimate_mi_with_errors(const ConditionalTable& table,
                                          const EncodingScheme& scheme, std::int64_t n_per_input,
                                          int trials, std::uint64_t seed,
                                          std::uint64_t stream_id = 0) {
  if (trials < 2) throw DomainError("estimate_mi_with_errors: trials must be >= 2");
  if (n_per_input <= 0) throw DomainError("estimate_mi_with_errors: n_per_input must be > 0");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, {stream_id, static_cast<std::uint64_t>(t)});
    values.push_back(mutual_information(scheme, sample_counts(table, n_per_input, rng).frequencies()));
  }
  // Shifted by the first value so that identical trials give exactly zero spread.
  const double shift = values.front();
  double sum = 0.0, sum_sq = 0.0;
  for (double v : values) {
    sum += v - shift;
    sum_sq += (v - shift) * (v - shift);
  }
  const double n = static_cast<double>(trials);
  const double var = std::max((sum_sq - sum * sum / n) / (n - 1.0), 0.0);
  return {shift + sum / n, std::sqrt(var)};
}

}  // namespace sdc
