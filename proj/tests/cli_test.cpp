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

// Runs the sdc binary end to end.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / ("sdc_cli_test_" + std::string(info->name()));
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(SDC_CLI_PATH) + " " + args + " 2>" + err_file.string();
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

std::string config(const std::string& name) { return std::string(SDC_CONFIG_DIR) + "/" + name; }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(Cli, RequiresSubcommand) {
  const auto r = run("");
  EXPECT_NE(r.exit_code, 0);
}

TEST(Cli, SweepThreeStateIsFlat) {
  const auto r = run("sweep --config " + config("fitted3state.cfg") + " --trials 20 --n-per-input 1000");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0][3], "mi_theory");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][3], rows[1][3]);
    EXPECT_NEAR(std::stod(rows[i][3]), 1.5100625007211562, 1e-12);
    EXPECT_EQ(rows[i][6], "THREE_STATE");
  }
}

TEST(Cli, SweepIsReproducible) {
  const std::string args = "sweep --config " + config("fitted4state.cfg") + " --trials 20 --n-per-input 1000";
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto c = run(args + " --seed 43");
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, FitRecoversSweepParameters) {
  const fs::path csv = scratch_dir() / "sweep.csv";
  const auto s = run("sweep --config " + config("fitted3state.cfg") +
                     " --trials 20 --n-per-input 1000 --out " + csv.string());
  ASSERT_EQ(s.exit_code, 0) << s.err;
  EXPECT_TRUE(s.out.empty());
  const auto f = run("fit --config " + config("fitted3state.cfg") + " --input " + csv.string() +
                     " --mi-column mi_mc_mean");
  ASSERT_EQ(f.exit_code, 0) << f.err;
  const auto rows = parse_csv(f.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "k_hat");
  EXPECT_NEAR(std::stod(rows[1][0]), -1.0, 1e-9);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.0749, 0.02);
}

TEST(Cli, ShowMatchesSweepEndpoints) {
  const auto show = run("show --config " + config("fitted4state.cfg"));
  ASSERT_EQ(show.exit_code, 0) << show.err;
  EXPECT_NE(show.out.find("k = -0.99995000000000001\n"), std::string::npos);
  EXPECT_NE(show.out.find("scheme = FOUR_STATE\n"), std::string::npos);
  const auto sweep = run("sweep --config " + config("fitted4state.cfg") + " --trials 2 --n-per-input 10");
  const auto rows = parse_csv(sweep.out);
  EXPECT_NE(show.out.find("grid_points = " + std::to_string(rows.size() - 1) + "\n"), std::string::npos);
  EXPECT_NE(show.out.find("mi_theory_first = " + rows[1][3] + "\n"), std::string::npos);
  EXPECT_NE(show.out.find("mi_theory_last = " + rows.back()[3] + "\n"), std::string::npos);
  EXPECT_NE(show.out.find("kappa_abs_last = " + rows.back()[1] + "\n"), std::string::npos);
}

TEST(Cli, InvalidParameterFailsCleanly) {
  const auto r = run("show --k 1.5");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_NE(r.err.find("'k'"), std::string::npos);
}

TEST(Cli, ConfigErrorReportsLine) {
  const fs::path cfg = scratch_dir() / "bad.cfg";
  std::ofstream(cfg) << "scheme = FOUR_STATE\nk = 1.5\n";
  const auto r = run("sweep --config " + cfg.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, MissingFileFails) {
  const auto r = run("sweep --config /nonexistent/none.cfg");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("/nonexistent/none.cfg"), std::string::npos);
}

TEST(Cli, MonteCarloAtOperatingPoint) {
  const auto r = run("mc --config " + config("fitted4state.cfg") + " --kappa-abs 0.163 --trials 50");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "t_a");
  EXPECT_NEAR(std::stod(rows[1][1]), 0.163, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][2]), 1.9011512921579616, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][3]), 1.9011512921579616, 0.01);
}

TEST(Cli, TomographyOfBellCounts) {
  const fs::path counts = scratch_dir() / "counts.txt";
  // Phi+ with 1000 shots per setting; settings HH HV HD HL / VH ... / LH ... LL.
  std::ofstream(counts) << "# phi plus\n"
                           "500 0 250 250\n"
                           "0 500 250 250\n"
                           "250 250 500 250\n"
                           "250 250 250 0\n";
  const auto r = run("tomo --input " + counts.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto pos = r.out.find("concurrence = ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 14)), 1.0, 1e-9);
}

TEST(Cli, TomographyRejectsShortInput) {
  const fs::path counts = scratch_dir() / "short.txt";
  std::ofstream(counts) << "1 2 3\n";
  const auto r = run("tomo --input " + counts.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("expected 16 counts"), std::string::npos);
}
