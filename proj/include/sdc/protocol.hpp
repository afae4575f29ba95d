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

// Superdense coding over the correlated dephasing environment: encodings,
// Bell-measurement statistics, mutual information and capacity formulas.

#pragma once

#include <array>
#include <cmath>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/core.hpp"
#include "sdc/environment.hpp"
#include "sdc/errors.hpp"

namespace sdc {

enum class SchemeVariant { ThreeState, FourState };

inline std::string_view to_string(SchemeVariant v) {
  return v == SchemeVariant::ThreeState ? "THREE_STATE" : "FOUR_STATE";
}

inline std::optional<SchemeVariant> scheme_variant_from_string(std::string_view name) {
  if (name == "THREE_STATE") return SchemeVariant::ThreeState;
  if (name == "FOUR_STATE") return SchemeVariant::FourState;
  return std::nullopt;
}

/// Alphabet of Bell states Alice can prepare, with the prior p1(x).
class EncodingScheme {
 public:
  static EncodingScheme three_state() { return EncodingScheme(SchemeVariant::ThreeState, {}); }
  static EncodingScheme four_state() { return EncodingScheme(SchemeVariant::FourState, {}); }

  /// Empty `priors` means uniform.
  static EncodingScheme make(SchemeVariant variant, std::vector<double> priors = {}) {
    return EncodingScheme(variant, std::move(priors));
  }

  SchemeVariant variant() const noexcept { return variant_; }
  const std::vector<BellLabel>& alphabet() const noexcept { return alphabet_; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  std::size_t size() const noexcept { return alphabet_.size(); }

  bool has_uniform_priors() const {
    const double u = 1.0 / static_cast<double>(size());
    for (double p : priors_)
      if (std::abs(p - u) > 1e-12) return false;
    return true;
  }

 private:
  EncodingScheme(SchemeVariant variant, std::vector<double> priors) : variant_(variant) {
    if (variant == SchemeVariant::ThreeState)
      alphabet_ = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus};
    else
      alphabet_ = {kBellLabels.begin(), kBellLabels.end()};
    if (priors.empty()) priors.assign(alphabet_.size(), 1.0 / static_cast<double>(alphabet_.size()));
    if (priors.size() != alphabet_.size())
      throw DomainError("priors: expected " + std::to_string(alphabet_.size()) + " values, got " +
                        std::to_string(priors.size()));
    for (double p : priors)
      if (!(p >= 0.0)) throw DomainError("priors must be non-negative");
    const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("priors must sum to 1");
    priors_ = std::move(priors);
  }

  SchemeVariant variant_;
  std::vector<BellLabel> alphabet_;
  std::vector<double> priors_;
};

/// The only outcome model: complete projective measurement in the Bell basis.
/// Analyzer imperfections are absorbed by the scalar offset s.
enum class MeasurementModel { IdealProjective4 };

inline TwoQubitMatrix bell_projector(BellLabel label) {
  const TwoQubitVector v = bell_vector(label);
  return v * v.adjoint();
}

/// Born-rule outcome distribution over the four Bell labels (kBellLabels order).
inline std::array<double, 4> born_probabilities(const DensityMatrix& rho) {
  std::array<double, 4> p{};
  for (auto label : kBellLabels) {
    double v = rho.expectation(bell_projector(label));
    if (v < 0.0 && v > -1e-12) v = 0.0;
    p[index_of(label)] = v;
  }
  return p;
}

/// p(y|x): one row per encoded symbol, one column per Bell outcome.
class ConditionalTable {
 public:
  using Row = std::array<double, 4>;

  ConditionalTable(std::vector<BellLabel> inputs, std::vector<Row> rows)
      : inputs_(std::move(inputs)), rows_(std::move(rows)) {
    if (inputs_.size() != rows_.size())
      throw StructureError("conditional table: input/row count mismatch");
    for (const Row& row : rows_) {
      double total = 0.0;
      for (double p : row) {
        if (!(p >= 0.0)) throw InvariantError("conditional table: negative probability");
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw InvariantError("conditional table: row sums to " + format_real(total));
    }
  }

  const std::vector<BellLabel>& inputs() const noexcept { return inputs_; }
  const std::array<BellLabel, 4>& outputs() const noexcept { return kBellLabels; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  double p(std::size_t input, BellLabel output) const { return rows_.at(input)[index_of(output)]; }

  /// CSV with header "input,output,p", one line per (x, y) pair.
  std::string to_csv() const {
    std::string out = "input,output,p\n";
    for (std::size_t x = 0; x < inputs_.size(); ++x)
      for (auto y : kBellLabels)
        out += std::string(to_string(inputs_[x])) + ',' + std::string(to_string(y)) + ',' +
               format_real(rows_[x][index_of(y)]) + '\n';
    return out;
  }

 private:
  std::vector<BellLabel> inputs_;
  std::vector<Row> rows_;
};

/// m = kappa^(2(1+k)), the coherence magnitude left after both stages with
/// equal durations and variances. 0^0 is taken as 1.
inline double effective_visibility(double kappa_abs, double k) {
  if (!(kappa_abs >= 0.0 && kappa_abs <= 1.0))
    throw DomainError("effective_visibility: kappa_abs must lie in [0, 1]");
  if (!(k >= -1.0 && k <= 1.0)) throw DomainError("effective_visibility: k must lie in [-1, 1]");
  if (kappa_abs == 0.0 && k == -1.0)
    std::clog << "warning: effective_visibility at kappa_abs = 0, k = -1 is 0^0; using 1\n";
  return std::pow(kappa_abs, 2.0 * (1.0 + k));
}

/// Dephased Bell statistics: each symbol stays put with probability (1+m)/2
/// and flips to its sector partner with (1-m)/2.
inline ConditionalTable conditional_probabilities(const EncodingScheme& scheme, double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("conditional_probabilities: m must lie in [0, 1]");
  std::vector<ConditionalTable::Row> rows;
  for (auto x : scheme.alphabet()) {
    ConditionalTable::Row row{};
    row[index_of(x)] = 0.5 * (1.0 + m);
    row[index_of(sector_partner(x))] = 0.5 * (1.0 - m);
    rows.push_back(row);
  }
  return ConditionalTable(scheme.alphabet(), std::move(rows));
}

/// I(X:Y) in bits minus the imperfection offset s, floored at 0.
inline double mutual_information(const EncodingScheme& scheme, const ConditionalTable& table,
                                 double s = 0.0) {
  if (!(s >= 0.0)) throw DomainError("mutual_information: s must be >= 0");
  if (table.inputs() != scheme.alphabet())
    throw StructureError("mutual_information: table inputs do not match the scheme alphabet");
  const auto& p1 = scheme.priors();
  std::array<double, 4> p2{};
  for (std::size_t x = 0; x < p1.size(); ++x)
    for (int y = 0; y < 4; ++y) p2[y] += p1[x] * table.rows()[x][y];
  double info = 0.0;
  for (std::size_t x = 0; x < p1.size(); ++x) {
    if (p1[x] == 0.0) continue;
    double row_sum = 0.0;
    for (int y = 0; y < 4; ++y) {
      const double pyx = table.rows()[x][y];
      if (pyx > 0.0) row_sum += pyx * std::log2(pyx / p2[y]);
    }
    info += p1[x] * row_sum;
  }
  return std::max(info - s, 0.0);
}

/// Capacity with Alice's noise only: 2 - H((1 + kappa)/2).
inline double capacity_pre_encoding(double kappa_abs) {
  if (!(kappa_abs >= 0.0 && kappa_abs <= 1.0))
    throw DomainError("capacity_pre_encoding: kappa_abs must lie in [0, 1]");
  return 2.0 - binary_entropy(0.5 * (1.0 + kappa_abs));
}

/// Capacity when Bob adds his correlated noise for the same duration.
inline double capacity_bob_noise(double kappa_abs, double k) {
  return 2.0 - binary_entropy(0.5 * (1.0 + effective_visibility(kappa_abs, k)));
}

/// Closed-form three-state mutual information (natural-log form, 1/ln 8
/// prefactor), minus s. The printed expression is inf - inf at x = 1; there
/// the analytic limit log2(3) - s is returned.
inline double closed_form_i3(double kappa_abs, double k, double s) {
  if (!(s >= 0.0)) throw DomainError("closed_form_i3: s must be >= 0");
  const double x = effective_visibility(kappa_abs, k);
  double value;
  if (1.0 - x < 1e-12) {
    value = std::log2(3.0);
  } else {
    value = (2.0 * x * std::atanh(x) + std::log(-27.0 / 4.0 * (x - 1.0)) + std::log(1.0 + x)) /
            std::log(8.0);
  }
  return std::max(value - s, 0.0);
}

/// Closed-form four-state mutual information (1/ln 4 prefactor), minus s.
inline double closed_form_i4(double kappa_abs, double k, double s) {
  if (!(s >= 0.0)) throw DomainError("closed_form_i4: s must be >= 0");
  const double x = effective_visibility(kappa_abs, k);
  const double down = x < 1.0 ? (1.0 - x) * std::log(2.0 - 2.0 * x) : 0.0;
  const double up = (1.0 + x) * std::log(2.0 + 2.0 * x);
  return std::max((down + up) / std::log(4.0) - s, 0.0);
}

inline double closed_form_mi(SchemeVariant variant, double kappa_abs, double k, double s) {
  return variant == SchemeVariant::ThreeState ? closed_form_i3(kappa_abs, k, s)
                                              : closed_form_i4(kappa_abs, k, s);
}

enum class NoiseOrder { BeforeEncoding, AfterEncoding };

inline std::string_view to_string(NoiseOrder order) {
  return order == NoiseOrder::BeforeEncoding ? "NOISE_BEFORE_ENCODING" : "NOISE_AFTER_ENCODING";
}

inline std::optional<NoiseOrder> noise_order_from_string(std::string_view name) {
  if (name == "NOISE_BEFORE_ENCODING") return NoiseOrder::BeforeEncoding;
  if (name == "NOISE_AFTER_ENCODING") return NoiseOrder::AfterEncoding;
  return std::nullopt;
}

/// Final two-qubit state Bob measures when Alice sends `symbol`.
///
/// X and Y exchange H and V on Alice's qubit, so when her noise precedes the
/// encoding its phase reaches the readout with the opposite sign.
inline DensityMatrix protocol_state(const JointSpectrum& spec, const DephasingTimes& times,
                                    BellLabel symbol, NoiseOrder order,
                                    PhaseHandling phase = PhaseHandling::Compensated) {
  spec.validate();
  times.validate();
  const PauliLabel pauli = encoding_pauli(symbol);
  const bool flips = pauli == PauliLabel::X || pauli == PauliLabel::Y;
  const double alice_time =
      order == NoiseOrder::BeforeEncoding && flips ? -times.t_a : times.t_a;
  const DensityMatrix encoded = apply_pauli(bell_state(BellLabel::PhiPlus), pauli, Party::Alice);
  return correlated_dephasing(encoded, spec, alice_time, times.t_b, phase);
}

/// Full density-matrix pipeline: prepare |Phi+>, dephase and encode in the
/// requested order, dephase Bob's qubit, then project onto the Bell basis.
inline ConditionalTable simulate_protocol(const JointSpectrum& spec, const DephasingTimes& times,
                                          const EncodingScheme& scheme, NoiseOrder order,
                                          PhaseHandling phase = PhaseHandling::Compensated) {
  std::vector<ConditionalTable::Row> rows;
  for (auto symbol : scheme.alphabet())
    rows.push_back(born_probabilities(protocol_state(spec, times, symbol, order, phase)));
  return ConditionalTable(scheme.alphabet(), std::move(rows));
}

}  // namespace sdc
