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

#include "gatesynth/synthesis.hpp"

#include "gatesynth/io.hpp"
#include "gatesynth/propagation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace gatesynth {

namespace {

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

bool same_trace(const std::vector<IterationRecord>& a, const std::vector<IterationRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lambda != b[i].lambda || a[i].constraint_residual != b[i].constraint_residual ||
        a[i].objective != b[i].objective) {
      return false;
    }
  }
  return true;
}

}  // namespace

Eigen::VectorXd RunConfig::weights() const {
  if (alpha.empty()) return Eigen::VectorXd::Ones(modes());
  return Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
}

DesignGrid RunConfig::grid() const { return DesignGrid(n_levels, modes(), n_steps, horizon); }

void RunConfig::validate() const {
  if (n_levels < 1) throw std::invalid_argument("n_levels must be >= 1");
  if (n_modes < 0) throw std::invalid_argument("n_modes must be >= 1");
  if (n_steps < 2) throw std::invalid_argument("n_steps must be >= 2");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be > 0");
  if (!(energy_budget > 0.0)) throw std::invalid_argument("energy budget must be > 0");
  if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
  if (!alpha.empty()) {
    if (static_cast<int>(alpha.size()) != modes()) {
      throw std::invalid_argument("alpha needs one weight per mode (" + std::to_string(modes()) +
                                  "), got " + std::to_string(alpha.size()));
    }
    for (double a : alpha)
      if (!(a > 0.0)) throw std::invalid_argument("alpha weights must be > 0");
  }
  if (target.kind != TargetSpec::Kind::kDft && target.path.empty()) {
    throw std::invalid_argument("target file path is empty");
  }
  if (target.quadrature_points < 2) throw std::invalid_argument("quadrature points must be >= 2");
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  solver.validate();
}

std::vector<double> SweepConfig::horizons() const {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i)
    out[i] = i == points - 1 ? t_max : t_min + (t_max - t_min) * i / (points - 1);
  return out;
}

void SweepConfig::validate() const {
  if (!(t_min > 0.0)) throw std::invalid_argument("t_min must be > 0");
  if (!(t_max > t_min)) throw std::invalid_argument("t_max must be > t_min");
  if (points < 2) throw std::invalid_argument("points must be >= 2");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  base.validate();
}

bool operator==(const SynthesisReport& a, const SynthesisReport& b) {
  return a.n_levels == b.n_levels && a.n_modes == b.n_modes && a.n_steps == b.n_steps &&
         a.horizon == b.horizon && a.energy_budget == b.energy_budget && a.epsilon == b.epsilon &&
         a.status == b.status && a.converged == b.converged && a.hard_case == b.hard_case &&
         a.target_non_unitary == b.target_non_unitary && a.iterations == b.iterations &&
         a.lambda_opt == b.lambda_opt && a.residual_norm2 == b.residual_norm2 &&
         a.predicted_error == b.predicted_error &&
         a.truncated_dyson_error == b.truncated_dyson_error &&
         a.verified_nser_opt == b.verified_nser_opt &&
         a.verified_nser_zero == b.verified_nser_zero &&
         a.constraint_residual == b.constraint_residual && a.stationarity == b.stationarity &&
         same_vector(a.v_opt, b.v_opt) && same_trace(a.trace, b.trace) && a.warnings == b.warnings;
}

GateMatrix resolve_target(const RunConfig& config) {
  switch (config.target.kind) {
    case TargetSpec::Kind::kDft:
      return dft_gate(config.n_levels);
    case TargetSpec::Kind::kMatrixFile: {
      GateMatrix gate;
      gate.entries = read_matrix_file(config.target.path);
      if (gate.dim() != config.n_levels) {
        throw std::invalid_argument("target matrix is " + std::to_string(gate.dim()) + "x" +
                                    std::to_string(gate.dim()) + " but n_levels is " +
                                    std::to_string(config.n_levels));
      }
      gate.role = GateRole::kTarget;
      gate.non_unitary = unitarity_defect(gate.entries) >= 1e-6;
      return gate;
    }
    case TargetSpec::Kind::kKernelFile: {
      const KernelGrid grid = read_kernel_file(config.target.path);
      return gate_from_kernel(grid.as_kernel(), config.n_levels, config.target.quadrature_points,
                              config.target.normalization);
    }
  }
  throw std::invalid_argument("unknown target kind");
}

SynthesisReport run_synthesis(const RunConfig& config) {
  config.validate();
  return run_synthesis(config, resolve_target(config));
}

SynthesisReport run_synthesis(const RunConfig& config, const GateMatrix& target) {
  config.validate();
  const DesignGrid grid = config.grid();
  const DesignProblem problem =
      build_problem(target, grid, config.weights(), config.energy_budget, config.epsilon);
  const SolverResult solved = solve_fixed_point(problem.program, config.solver);

  SynthesisReport report;
  report.n_levels = grid.n_levels();
  report.n_modes = grid.n_modes();
  report.n_steps = grid.n_steps();
  report.horizon = grid.horizon();
  report.energy_budget = config.energy_budget;
  report.epsilon = config.epsilon;
  report.status = solved.status;
  report.converged = solved.converged;
  report.hard_case = solved.hard_case;
  report.target_non_unitary = target.non_unitary;
  report.iterations = solved.iterations;
  report.lambda_opt = solved.lambda_opt;
  report.residual_norm2 = problem.program.constant;
  report.v_opt = solved.v_opt;
  report.trace = solved.trace;
  report.warnings = solved.warnings;
  if (target.non_unitary) report.warnings.emplace_back("target gate is not unitary");

  const ControlField field(grid, solved.v_opt);
  const ControlField zero(grid);
  report.predicted_error = predicted_error(problem.program, solved.v_opt);
  report.truncated_dyson_error = truncated_gate_error(
      problem.residual, dyson_gate(field, problem.gamma, problem.basis, config.epsilon));

  const auto evolved = exact_propagate(field, problem.gamma, problem.basis, config.epsilon,
                                       config.substeps);
  const auto free = exact_propagate(zero, problem.gamma, problem.basis, config.epsilon,
                                    config.substeps);
  report.verified_nser_opt = nser(target.entries, evolved.u_t);
  report.verified_nser_zero = nser(target.entries, free.u_t);

  const KktResiduals kkt = kkt_residuals(problem.program, solved.v_opt, solved.lambda_opt);
  report.constraint_residual = kkt.constraint;
  report.stationarity = kkt.stationarity;
  return report;
}

int exit_code(const SynthesisReport& report) {
  switch (report.status) {
    case SolverStatus::kConverged: return 0;
    case SolverStatus::kMaxIterations: return 2;
    case SolverStatus::kDegenerateTarget: return 3;
  }
  return 2;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> horizons = config.horizons();
  // Resolve the target once; it does not depend on T.
  const GateMatrix target = resolve_target(config.base);
  std::vector<SweepRow> rows(horizons.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < horizons.size(); i = next++) {
      SweepRow& row = rows[i];
      row.horizon = horizons[i];
      try {
        RunConfig run = config.base;
        run.horizon = horizons[i];
        const SynthesisReport report = run_synthesis(run, target);
        row.predicted_error = report.predicted_error;
        row.verified_nser_opt = report.verified_nser_opt;
        row.verified_nser_zero = report.verified_nser_zero;
        row.lambda = report.lambda_opt;
        row.iterations = report.iterations;
        row.converged = report.converged;
        row.status = to_string(report.status);
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
    }
  };

  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(horizons.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace gatesynth
