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

// synthesis.hpp: end-to-end runs. Build the target residual, assemble the
// quadratic model, solve for the controls, then score the result with the
// exact propagator.

#pragma once

#include "gatesynth/assembly.hpp"
#include "gatesynth/optimizer.hpp"
#include "gatesynth/spectral.hpp"

#include <Eigen/Dense>

#include <numbers>
#include <string>
#include <vector>

namespace gatesynth {

struct TargetSpec {
  enum class Kind { kDft, kMatrixFile, kKernelFile };
  Kind kind = Kind::kDft;
  std::string path;
  int quadrature_points = 100;  // M, kernel targets only
  KernelNormalization normalization = KernelNormalization::kPaperDiscrete;
};

struct RunConfig {
  int n_levels = 2;
  int n_modes = 0;  // 0 means P = N
  int n_steps = 50;
  double horizon = 20.0 / (std::numbers::pi * std::numbers::pi);
  double energy_budget = std::numbers::pi * std::numbers::pi / 10.0;  // E0 / 5
  double epsilon = 1.0;
  std::vector<double> alpha;  // empty means alpha[p] = 1
  TargetSpec target;
  SolverConfig solver;
  int substeps = 1;

  int modes() const { return n_modes > 0 ? n_modes : n_levels; }
  Eigen::VectorXd weights() const;
  DesignGrid grid() const;
  void validate() const;  // throws std::invalid_argument
};

struct SweepConfig {
  double t_min = 0.5;
  double t_max = 4.0;
  int points = 8;
  int threads = 0;  // 0 means hardware concurrency
  RunConfig base;

  std::vector<double> horizons() const;
  void validate() const;
};

struct SynthesisReport {
  int n_levels = 0;
  int n_modes = 0;
  int n_steps = 0;
  double horizon = 0.0;
  double energy_budget = 0.0;
  double epsilon = 0.0;

  SolverStatus status = SolverStatus::kMaxIterations;
  bool converged = false;
  bool hard_case = false;
  bool target_non_unitary = false;
  int iterations = 0;
  double lambda_opt = 0.0;

  double residual_norm2 = 0.0;         // ||W_d||^2, the model at V = 0
  double predicted_error = 0.0;        // model at V*
  double truncated_dyson_error = 0.0;  // same quantity from the Dyson matrices
  double verified_nser_opt = 0.0;
  double verified_nser_zero = 0.0;
  double constraint_residual = 0.0;
  double stationarity = 0.0;

  Eigen::VectorXd v_opt;
  std::vector<IterationRecord> trace;
  std::vector<std::string> warnings;
};

// Field-by-field exact equality (vectors compared by size, then entries).
bool operator==(const SynthesisReport& a, const SynthesisReport& b);

// Resolves dft / matrix file / kernel file into an N x N target gate.
GateMatrix resolve_target(const RunConfig& config);

SynthesisReport run_synthesis(const RunConfig& config);
SynthesisReport run_synthesis(const RunConfig& config, const GateMatrix& target);

// 0 success, 2 solver non-convergence, 3 degenerate target.
int exit_code(const SynthesisReport& report);

struct SweepRow {
  double horizon = 0.0;
  double predicted_error = 0.0;
  double verified_nser_opt = 0.0;
  double verified_nser_zero = 0.0;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;  // solver status, or "error: ..." when the point failed
};

// One synthesis per horizon on a uniform grid; rows ordered by T.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

}  // namespace gatesynth
