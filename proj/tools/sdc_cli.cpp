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

// sdc: command-line front end for noisy superdense coding sweeps, Monte
// Carlo error bars, (k, s) fits and tomographic reconstruction.
//
//   sdc sweep --config run.cfg --out sweep.csv
//   sdc mc    --config run.cfg --kappa-abs 0.163
//   sdc fit   --config run.cfg --input sweep.csv
//   sdc tomo  --input counts.txt
//   sdc show  --config run.cfg
//
// Every config key can be overridden with a flag of the same name in
// kebab-case (--n-per-input 20000, --noise-order NOISE_AFTER_ENCODING, ...).

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdc/sdc.hpp"

namespace {

const std::vector<std::string> kConfigKeys = {
    "omega0", "c_aa",   "c_bb", "k", "delta_n",     "scheme", "priors",      "t_start",
    "t_stop", "t_step", "t_list", "s", "n_per_input", "trials", "seed", "noise_order",
    "output_path"};

std::string kebab(std::string key) {
  for (auto& ch : key)
    if (ch == '_') ch = '-';
  return key;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sdc::IoError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw sdc::IoError(path, "read failed");
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sdc::IoError(path, "cannot open file for writing");
  out << data;
  if (!out) throw sdc::IoError(path, "write failed");
}

/// Options shared by every subcommand.
struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Run configuration file (key = value)");
    cmd->add_option("--out", out_path, "Output file (default: output_path, else stdout)");
    for (const auto& key : kConfigKeys)
      cmd->add_option("--" + kebab(key), overrides[key], "Override config key '" + key + "'");
  }

  sdc::RunConfig load() const {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    sdc::ConfigOverrides list;
    for (const auto& [key, value] : overrides)
      if (!value.empty()) list.emplace_back(key, value);
    return sdc::parse_config(text, list);
  }

  std::string output(const sdc::RunConfig& config) const {
    return out_path.empty() ? config.output_path : out_path;
  }
};

double time_for_kappa(const sdc::JointSpectrum& spec, double kappa_abs) {
  if (!(kappa_abs > 0.0 && kappa_abs <= 1.0))
    throw sdc::DomainError("kappa_abs must lie in (0, 1]");
  if (kappa_abs == 1.0) return 0.0;
  const double rate = spec.c_aa * spec.delta_n * spec.delta_n;
  if (!(rate > 0.0)) throw sdc::DomainError("kappa_abs < 1 is unreachable with delta_n = 0");
  return std::sqrt(-2.0 * std::log(kappa_abs) / rate);
}

int run_sweep_command(const CommonArgs& args) {
  const auto config = args.load();
  const auto grid = config.time_grid.points();
  const auto rows = sdc::run_sweep(config.spectrum, grid, config.scheme(), config.n_per_input,
                                   config.trials, config.seed, {config.s, config.noise_order});
  write_output(args.output(config), sdc::sweep_csv(rows));
  return 0;
}

int run_mc_command(const CommonArgs& args, std::optional<double> kappa_abs, std::optional<double> t) {
  const auto config = args.load();
  config.spectrum.validate();
  double t_a;
  if (kappa_abs)
    t_a = time_for_kappa(config.spectrum, *kappa_abs);
  else if (t)
    t_a = *t;
  else
    t_a = config.time_grid.points().back();
  if (!(t_a >= 0.0)) throw sdc::DomainError("t must be >= 0");

  const auto scheme = config.scheme();
  const sdc::SweepOptions options{config.s, config.noise_order};
  const auto table = sdc::simulate_protocol(config.spectrum, {t_a, t_a}, scheme, config.noise_order);
  const auto mc = sdc::estimate_mi_with_errors(table, scheme, config.n_per_input, config.trials,
                                               config.seed);
  std::string out = "t_a,kappa_abs,mi_theory,mi_mc_mean,mi_mc_std,scheme\n";
  out += sdc::format_real(t_a) + ',' + sdc::format_real(std::abs(sdc::kappa_a(config.spectrum, t_a))) +
         ',' + sdc::format_real(sdc::theory_mi(config.spectrum, t_a, scheme, options)) + ',' +
         sdc::format_real(std::max(mc.mean - config.s, 0.0)) + ',' + sdc::format_real(mc.std) +
         ',' + std::string(sdc::to_string(scheme.variant())) + '\n';
  write_output(args.output(config), out);
  return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.emplace_back(sdc::trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<sdc::FitPoint> read_fit_points(const std::string& path, const std::string& mi_column) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw sdc::IoError(path, "empty file");
  const auto header = split_csv_line(line);
  const auto find = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int kappa_col = find("kappa_abs");
  int mi_col = mi_column.empty() ? find("mi") : find(mi_column);
  if (mi_column.empty() && mi_col < 0) mi_col = find("mi_mc_mean");
  if (kappa_col < 0) throw sdc::IoError(path, "no 'kappa_abs' column in header");
  if (mi_col < 0)
    throw sdc::IoError(path, "no '" + (mi_column.empty() ? std::string("mi") : mi_column) +
                                 "' column in header");

  std::vector<sdc::FitPoint> points;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (sdc::trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const auto need = static_cast<std::size_t>(std::max(kappa_col, mi_col));
    if (fields.size() <= need)
      throw sdc::IoError(path, "line " + std::to_string(line_no) + ": too few columns");
    const auto kappa = sdc::parse_real(fields[kappa_col]);
    const auto mi = sdc::parse_real(fields[mi_col]);
    if (!kappa || !mi) throw sdc::IoError(path, "line " + std::to_string(line_no) + ": malformed number");
    points.push_back({*kappa, *mi});
  }
  return points;
}

int run_fit_command(const CommonArgs& args, const std::string& input, const std::string& mi_column) {
  const auto config = args.load();
  const auto points = read_fit_points(input, mi_column);
  const auto result = sdc::fit_k_s(points, config.scheme_variant);
  write_output(args.output(config), sdc::fit_csv(result));
  return 0;
}

int run_tomo_command(const CommonArgs& args, const std::string& input,
                     std::optional<double> n_per_projector) {
  const auto config = args.load();
  std::string text = read_file(input);
  std::array<double, sdc::kTomographySettings> counts{};
  std::istringstream in(text);
  std::string line;
  int filled = 0;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      if (filled == sdc::kTomographySettings) throw sdc::IoError(input, "more than 16 counts");
      const auto v = sdc::parse_real(token);
      if (!v || *v < 0.0) throw sdc::IoError(input, "malformed count '" + token + "'");
      counts[filled++] = *v;
    }
  }
  if (filled != sdc::kTomographySettings)
    throw sdc::IoError(input, "expected 16 counts, found " + std::to_string(filled));
  // Without an explicit shot number, use the H/V block (HH + HV + VH + VV),
  // which sums to n for any state.
  const double n = n_per_projector ? *n_per_projector : counts[0] + counts[1] + counts[4] + counts[5];
  const auto rho = sdc::reconstruct_linear_inversion(
      std::span<const double, sdc::kTomographySettings>(counts), n);
  write_output(args.output(config),
               sdc::to_text(rho) + "concurrence = " + sdc::format_real(sdc::concurrence(rho)) + '\n');
  return 0;
}

int run_show_command(const CommonArgs& args) {
  const auto config = args.load();
  config.spectrum.validate();
  const auto grid = config.time_grid.points();
  const auto scheme = config.scheme();
  const sdc::SweepOptions options{config.s, config.noise_order};
  const double first = grid.front();
  const double last = grid.back();
  std::string out = sdc::to_config_text(config);
  out += "# derived\n";
  out += "grid_points = " + std::to_string(grid.size()) + '\n';
  out += "t_first = " + sdc::format_real(first) + '\n';
  out += "t_last = " + sdc::format_real(last) + '\n';
  out += "kappa_abs_first = " + sdc::format_real(std::abs(sdc::kappa_a(config.spectrum, first))) + '\n';
  out += "kappa_abs_last = " + sdc::format_real(std::abs(sdc::kappa_a(config.spectrum, last))) + '\n';
  out += "mi_theory_first = " + sdc::format_real(sdc::theory_mi(config.spectrum, first, scheme, options)) + '\n';
  out += "mi_theory_last = " + sdc::format_real(sdc::theory_mi(config.spectrum, last, scheme, options)) + '\n';
  write_output(args.out_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superdense coding over correlated dephasing environments"};
  app.require_subcommand(1);

  CommonArgs sweep_args, mc_args, fit_args, tomo_args, show_args;

  auto* sweep = app.add_subcommand("sweep", "MI and concurrence vs Alice's dephasing time (CSV)");
  sweep_args.attach(sweep);

  auto* mc = app.add_subcommand("mc", "Monte Carlo MI mean and std at one noise setting");
  mc_args.attach(mc);
  std::optional<double> mc_kappa, mc_t;
  mc->add_option("--kappa-abs", mc_kappa, "Operating point as |kappa_A| (converted to t_a)");
  mc->add_option("--t", mc_t, "Operating point as t_a (default: last grid time)");

  auto* fit = app.add_subcommand("fit", "Least-squares fit of (k, s) to (kappa_abs, mi) data");
  fit_args.attach(fit);
  std::string fit_input, fit_column;
  fit->add_option("--input", fit_input, "CSV with kappa_abs and mi (or mi_mc_mean) columns")
      ->required();
  fit->add_option("--mi-column", fit_column, "Name of the MI column to fit");

  auto* tomo = app.add_subcommand("tomo", "Linear-inversion tomography from 16 counts");
  tomo_args.attach(tomo);
  std::string tomo_input;
  std::optional<double> tomo_n;
  tomo->add_option("--input", tomo_input, "File with 16 counts, settings HH HV HD HL VH ... LL")
      ->required();
  tomo->add_option("--n-per-projector", tomo_n, "Shots per setting (default: HH+HV+VH+VV)");

  auto* show = app.add_subcommand("show", "Print the resolved configuration and derived values");
  show_args.attach(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sweep) return run_sweep_command(sweep_args);
    if (*mc) return run_mc_command(mc_args, mc_kappa, mc_t);
    if (*fit) return run_fit_command(fit_args, fit_input, fit_column);
    if (*tomo) return run_tomo_command(tomo_args, tomo_input, tomo_n);
    if (*show) return run_show_command(show_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
