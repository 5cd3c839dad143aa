// Copyright 2026 The gatesynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gatesynth/io.hpp"
#include "gatesynth/propagation.hpp"
#include "gatesynth/synthesis.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace gatesynth;
using doctest::Approx;
using std::numbers::pi;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gatesynth_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string report_text(const SynthesisReport& r) {
  std::ostringstream s;
  write_report_csv(s, r);
  return s.str();
}

}  // namespace

TEST_CASE("paper defaults") {
  const RunConfig c;
  CHECK(c.epsilon == 1.0);
  CHECK(c.energy_budget == Approx(pi * pi / 10));
  CHECK(c.horizon == Approx(20 / (pi * pi)));
  CHECK(c.target.quadrature_points == 100);
  CHECK(c.modes() == c.n_levels);
  CHECK(c.weights() == Eigen::VectorXd::Ones(2));
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("config validation") {
  RunConfig c;
  c.n_steps = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.alpha = {1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.alpha = {1.0, -1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.target.kind = TargetSpec::Kind::kMatrixFile;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  SweepConfig s;
  s.points = 1;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.t_max = s.t_min;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.t_min = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("N=2 DFT at paper parameters") {
  const auto r = run_synthesis(RunConfig{});
  REQUIRE(r.converged);
  CHECK(exit_code(r) == 0);
  CHECK(r.verified_nser_opt < r.verified_nser_zero);
  CHECK(std::abs(r.constraint_residual) <= 1e-8 * r.energy_budget);
  CHECK(r.predicted_error < r.residual_norm2);
  CHECK(r.predicted_error == Approx(r.truncated_dyson_error).epsilon(1e-10));
  // Regression fixtures from the first recorded run.
  CHECK(r.verified_nser_zero == Approx(2.1217167420848).epsilon(1e-9));
  CHECK(r.verified_nser_opt == Approx(0.980933801460).epsilon(1e-6));
  CHECK(r.predicted_error == Approx(1.531809614411).epsilon(1e-6));
  CHECK(r.lambda_opt == Approx(1.908924383511).epsilon(1e-6));
}

TEST_CASE("N=4 DFT, P=4, K=50") {
  RunConfig c;
  c.n_levels = 4;
  c.n_modes = 4;
  const auto r = run_synthesis(c);
  REQUIRE(r.converged);
  CHECK(std::abs(r.constraint_residual) <= 1e-8 * c.energy_budget);
  CHECK(r.v_opt.size() == 200);
}

TEST_CASE("free-evolution target is degenerate") {
  RunConfig c;
  c.n_levels = 1;
  const GateMatrix free{Eigen::MatrixXcd::Constant(1, 1, std::exp(Complex(0, -energy(1) * c.horizon))),
                        GateRole::kTarget, false};
  const auto r = run_synthesis(c, free);
  CHECK_FALSE(r.converged);
  CHECK(r.status == SolverStatus::kDegenerateTarget);
  CHECK(exit_code(r) == 3);
  CHECK(r.v_opt.norm() == 0.0);
  CHECK(r.verified_nser_zero < 1e-20);
}

TEST_CASE("non-convergence exit code") {
  RunConfig c;
  c.solver.max_iters = 1;
  const auto r = run_synthesis(c);
  CHECK_FALSE(r.converged);
  CHECK(exit_code(r) == 2);
}

TEST_CASE("determinism and report round trip") {
  const auto a = run_synthesis(RunConfig{});
  const auto b = run_synthesis(RunConfig{});
  CHECK(a == b);
  CHECK(report_text(a) == report_text(b));

  std::istringstream in(report_text(a));
  const auto back = read_report_csv(in);
  CHECK(back == a);
  CHECK(report_text(back) == report_text(a));

  // Degenerate and unconverged reports carry other statuses and warnings.
  RunConfig c;
  c.solver.max_iters = 1;
  const auto odd = run_synthesis(c);
  std::istringstream in2(report_text(odd));
  CHECK(read_report_csv(in2) == odd);

  std::istringstream bad("key,value\nnot_a_key,1\n");
  CHECK_THROWS_AS(read_report_csv(bad), std::invalid_argument);
}

TEST_CASE("sweep") {
  SweepConfig s;
  s.points = 2;
  s.base.n_steps = 10;
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].horizon == s.t_min);
  CHECK(rows[1].horizon == s.t_max);
  std::ostringstream out;
  write_sweep_csv(out, rows);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "T,predicted_error,verified_nser_opt,verified_nser_zero,lambda,iterations,converged,status");
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);
}

TEST_CASE("sweep output does not depend on the thread count") {
  SweepConfig s;
  s.points = 6;
  s.base.n_steps = 20;
  auto text = [&](int threads) {
    s.threads = threads;
    std::ostringstream out;
    write_sweep_csv(out, run_sweep(s));
    return out.str();
  };
  const std::string one = text(1);
  CHECK(one == text(4));
  CHECK(one == text(4));
  CHECK(one == text(0));
}

TEST_CASE("sweep over a matrix-file target") {
  SweepConfig s;
  s.points = 3;
  s.base.n_steps = 10;
  s.base.n_levels = 1;
  s.base.target.kind = TargetSpec::Kind::kMatrixFile;
  const auto path = scratch("one.txt");
  write_file(path, "1\n1\n");
  s.base.target.path = path.string();
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.status.rfind("error", 0) != 0);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-2i") == Complex(0, -2));
  CHECK(parse_complex("0.25-1e-3i") == Complex(0.25, -1e-3));
  CHECK(parse_complex("+i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1e-3+2E+1i") == Complex(1e-3, 20));
  CHECK(parse_complex(" 3+4i ") == Complex(3, 4));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  for (Complex z : {Complex(0.1, -0.3), Complex(-1e-300, 7), Complex(pi, -0.0)})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("matrix files") {
  std::istringstream ok("2\n0.70710678118654752+0i 0.70710678118654752\n"
                        "0.70710678118654752 -0.70710678118654752+0i\n");
  const auto m = read_matrix(ok);
  CHECK((m - dft_gate(2).entries).cwiseAbs().maxCoeff() < 1e-15);

  std::istringstream short_rows("2\n1 0\n0\n");
  CHECK_THROWS_AS(read_matrix(short_rows), std::invalid_argument);
  std::istringstream extra("1\n1 2\n");
  CHECK_THROWS_AS(read_matrix(extra), std::invalid_argument);
  std::istringstream no_size("x\n");
  CHECK_THROWS_AS(read_matrix(no_size), std::invalid_argument);

  const auto u = dft_gate(5).entries;
  std::stringstream io;
  write_matrix(io, u);
  CHECK(read_matrix(io) == u);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/gate.txt"), std::invalid_argument);
}

TEST_CASE("matrix-file target reproduces the dft run") {
  const auto path = scratch("dft2.txt");
  {
    std::ofstream out(path);
    write_matrix(out, dft_gate(2).entries);
  }
  RunConfig c;
  c.target.kind = TargetSpec::Kind::kMatrixFile;
  c.target.path = path.string();
  CHECK(run_synthesis(c) == run_synthesis(RunConfig{}));

  c.n_levels = 3;
  CHECK_THROWS_AS(run_synthesis(c), std::invalid_argument);
}

TEST_CASE("kernel-file target") {
  const int m = 100;
  std::ostringstream text;
  text << m << '\n';
  for (int r = 0; r < m; ++r) {
    for (int s = 0; s < m; ++s)
      text << (s ? " " : "") << format_double(2 * std::sin(pi * r / m) * std::sin(pi * s / m));
    text << '\n';
  }
  const auto path = scratch("kernel.txt");
  write_file(path, text.str());
  RunConfig c;
  c.n_levels = 1;
  c.target.kind = TargetSpec::Kind::kKernelFile;
  c.target.path = path.string();
  const auto paper = resolve_target(c);
  CHECK(paper.entries(0, 0).real() == Approx(0.5).epsilon(1e-12));
  CHECK(paper.non_unitary);
  c.target.normalization = KernelNormalization::kOrthonormal;
  CHECK(resolve_target(c).entries(0, 0).real() == Approx(1.0).epsilon(1e-12));

  const auto r = run_synthesis(c);
  CHECK_FALSE(r.target_non_unitary);
}

TEST_CASE("config files") {
  const auto path = scratch("run.yaml");
  write_file(path,
             "n_levels: 3\nn_modes: 2\nn_steps: 12\nhorizon: 1.25\nenergy: 0.5\nepsilon: 0.8\n"
             "alpha: [1.0, 2.0]\ntarget: dft\nsubsteps: 2\nlambda0: 0.5\nmax_iters: 40\n"
             "tol_v: 1.0e-9\ntol_constraint: 1.0e-9\nt_min: 0.25\nt_max: 2.0\npoints: 5\n");
  SweepConfig s;
  apply_config_file(path.string(), s);
  CHECK(s.base.n_levels == 3);
  CHECK(s.base.modes() == 2);
  CHECK(s.base.n_steps == 12);
  CHECK(s.base.horizon == 1.25);
  CHECK(s.base.energy_budget == 0.5);
  CHECK(s.base.epsilon == 0.8);
  CHECK(s.base.alpha == std::vector<double>{1.0, 2.0});
  CHECK(s.base.substeps == 2);
  CHECK(s.base.solver.lambda0 == 0.5);
  CHECK(s.base.solver.max_iters == 40);
  CHECK(s.t_min == 0.25);
  CHECK(s.t_max == 2.0);
  CHECK(s.points == 5);
  CHECK_NOTHROW(s.validate());

  write_file(path, "n_levels: 2\nbogus: 1\n");
  CHECK_THROWS_AS(apply_config_file(path.string(), s), std::invalid_argument);
  write_file(path, "n_levels: two\n");
  CHECK_THROWS_AS(apply_config_file(path.string(), s), std::invalid_argument);
  write_file(path, "target: circle\n");
  CHECK_THROWS_AS(apply_config_file(path.string(), s), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_file("/nonexistent/run.yaml", s), std::invalid_argument);
}

TEST_CASE("potential csv") {
  const DesignGrid g(2, 2, 3, 1.0);
  Eigen::VectorXd v(6);
  v << 1, 2, 3, 4, 5, 6.5;
  std::ostringstream out;
  write_potential_csv(out, ControlField(g, v));
  CHECK(out.str() == "r0,r1,r2\n1,2,3\n4,5,6.5\n");
}
