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

// Run configuration: flat "key = value" text, one pair per line, '#' starts
// a comment. Keys are case-sensitive; reals are decimal literals with an
// optional exponent.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdc/environment.hpp"
#include "sdc/errors.hpp"
#include "sdc/numeric_text.hpp"
#include "sdc/protocol.hpp"

namespace sdc {

struct TimeGrid {
  double start = 0.0;
  double stop = 2.0;
  double step = 0.1;
  /// Takes precedence over start/stop/step when non-empty.
  std::vector<double> explicit_times;

  std::vector<double> points() const {
    if (!explicit_times.empty()) return explicit_times;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

struct RunConfig {
  JointSpectrum spectrum;
  SchemeVariant scheme_variant = SchemeVariant::ThreeState;
  /// Empty means uniform.
  std::vector<double> priors;
  TimeGrid time_grid;
  double s = 0.0;
  std::int64_t n_per_input = 10000;
  int trials = 1000;
  std::uint64_t seed = 42;
  NoiseOrder noise_order = NoiseOrder::BeforeEncoding;
  std::string output_path;

  EncodingScheme scheme() const { return EncodingScheme::make(scheme_variant, priors); }
};

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    const auto v = parse_real(item);
    if (!v) throw std::invalid_argument("malformed number '" + std::string(trim(item)) + "' in list");
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline double require_real(std::string_view v) {
  const auto x = parse_real(v);
  if (!x || !std::isfinite(*x))
    throw std::invalid_argument("malformed decimal literal '" + std::string(v) + "'");
  return *x;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

inline const std::map<std::string, Setter, std::less<>>& config_setters() {
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"omega0", [](RunConfig& c, std::string_view v) { c.spectrum.omega0 = require_real(v); }},
      {"c_aa",
       [](RunConfig& c, std::string_view v) {
         c.spectrum.c_aa = require_real(v);
         if (!(c.spectrum.c_aa > 0.0)) throw std::invalid_argument("must be > 0");
       }},
      {"c_bb",
       [](RunConfig& c, std::string_view v) {
         c.spectrum.c_bb = require_real(v);
         if (!(c.spectrum.c_bb > 0.0)) throw std::invalid_argument("must be > 0");
       }},
      {"k",
       [](RunConfig& c, std::string_view v) {
         c.spectrum.k = require_real(v);
         if (!(c.spectrum.k >= -1.0 && c.spectrum.k <= 1.0))
           throw std::invalid_argument("must lie in [-1, 1]");
       }},
      {"delta_n", [](RunConfig& c, std::string_view v) { c.spectrum.delta_n = require_real(v); }},
      {"scheme",
       [](RunConfig& c, std::string_view v) {
         const auto variant = scheme_variant_from_string(v);
         if (!variant) throw std::invalid_argument("expected THREE_STATE or FOUR_STATE");
         c.scheme_variant = *variant;
       }},
      {"priors", [](RunConfig& c, std::string_view v) { c.priors = parse_real_list(v); }},
      {"t_start",
       [](RunConfig& c, std::string_view v) {
         c.time_grid.start = require_real(v);
         if (!(c.time_grid.start >= 0.0)) throw std::invalid_argument("must be >= 0");
       }},
      {"t_stop", [](RunConfig& c, std::string_view v) { c.time_grid.stop = require_real(v); }},
      {"t_step",
       [](RunConfig& c, std::string_view v) {
         c.time_grid.step = require_real(v);
         if (!(c.time_grid.step > 0.0)) throw std::invalid_argument("must be > 0");
       }},
      {"t_list",
       [](RunConfig& c, std::string_view v) {
         c.time_grid.explicit_times = parse_real_list(v);
         for (double t : c.time_grid.explicit_times)
           if (!(t >= 0.0)) throw std::invalid_argument("times must be >= 0");
       }},
      {"s",
       [](RunConfig& c, std::string_view v) {
         c.s = require_real(v);
         if (!(c.s >= 0.0)) throw std::invalid_argument("must be >= 0");
       }},
      {"n_per_input",
       [](RunConfig& c, std::string_view v) {
         const auto n = parse_integer<std::int64_t>(v);
         if (!n) throw std::invalid_argument("malformed integer '" + std::string(v) + "'");
         if (*n <= 0) throw std::invalid_argument("must be > 0");
         c.n_per_input = *n;
       }},
      {"trials",
       [](RunConfig& c, std::string_view v) {
         const auto n = parse_integer<int>(v);
         if (!n) throw std::invalid_argument("malformed integer '" + std::string(v) + "'");
         if (*n < 2) throw std::invalid_argument("must be >= 2");
         c.trials = *n;
       }},
      {"seed",
       [](RunConfig& c, std::string_view v) {
         const auto n = parse_integer<std::uint64_t>(v);
         if (!n) throw std::invalid_argument("malformed integer '" + std::string(v) + "'");
         c.seed = *n;
       }},
      {"noise_order",
       [](RunConfig& c, std::string_view v) {
         const auto order = noise_order_from_string(v);
         if (!order)
           throw std::invalid_argument("expected NOISE_BEFORE_ENCODING or NOISE_AFTER_ENCODING");
         c.noise_order = *order;
       }},
      {"output_path", [](RunConfig& c, std::string_view v) { c.output_path = std::string(v); }},
  };
  return setters;
}

}  // namespace detail

inline bool is_config_key(std::string_view key) {
  return detail::config_setters().count(key) > 0;
}

/// Parses and validates a configuration. `overrides` are applied after the
/// file, as if appended to it (errors report line 0). Unset keys take their
/// defaults; c_bb defaults to c_aa.
inline RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {}) {
  std::map<std::string, std::pair<std::string, int>, std::less<>> entries;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!is_config_key(key)) throw ParseError(key, line_no, "unknown key");
    if (entries.count(key)) throw ParseError(key, line_no, "duplicate key");
    entries[key] = {value, line_no};
  }
  for (const auto& [key, value] : overrides) {
    if (!is_config_key(key)) throw ParseError(key, 0, "unknown key");
    entries[key] = {std::string(trim(value)), 0};
  }

  RunConfig config;
  for (const auto& [key, entry] : entries) {
    try {
      detail::config_setters().at(key)(config, entry.first);
    } catch (const std::invalid_argument& e) {
      throw ParseError(key, entry.second, e.what());
    }
  }
  if (!entries.count("c_bb")) config.spectrum.c_bb = config.spectrum.c_aa;

  const auto line_of = [&](std::string_view key) {
    const auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.second;
  };
  if (config.time_grid.explicit_times.empty() && config.time_grid.stop < config.time_grid.start)
    throw ParseError("t_stop", line_of("t_stop"), "must be >= t_start");
  if (!config.priors.empty()) {
    try {
      config.scheme();
    } catch (const DomainError& e) {
      throw ParseError("priors", line_of("priors"), e.what());
    }
  }
  return config;
}

/// Canonical "key = value" rendering; parse_config(to_config_text(c))
/// reproduces c.
inline std::string to_config_text(const RunConfig& c) {
  const auto list = [](const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_real(xs[i]);
    return out;
  };
  std::string out;
  const auto put = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + '\n';
  };
  put("omega0", format_real(c.spectrum.omega0));
  put("c_aa", format_real(c.spectrum.c_aa));
  put("c_bb", format_real(c.spectrum.c_bb));
  put("k", format_real(c.spectrum.k));
  put("delta_n", format_real(c.spectrum.delta_n));
  put("scheme", std::string(to_string(c.scheme_variant)));
  if (!c.priors.empty()) put("priors", list(c.priors));
  put("t_start", format_real(c.time_grid.start));
  put("t_stop", format_real(c.time_grid.stop));
  put("t_step", format_real(c.time_grid.step));
  if (!c.time_grid.explicit_times.empty()) put("t_list", list(c.time_grid.explicit_times));
  put("s", format_real(c.s));
  put("n_per_input", std::to_string(c.n_per_input));
  put("trials", std::to_string(c.trials));
  put("seed", std::to_string(c.seed));
  put("noise_order", std::string(to_string(c.noise_order)));
  if (!c.output_path.empty()) put("output_path", c.output_path);
  return out;
}

}  // namespace sdc
