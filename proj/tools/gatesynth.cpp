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

// gatesynth: synthesize box-potential controls for a target gate.
//
//   gatesynth run   [--config F] [overrides] [--out report.csv] [--emit-potential pot.csv]
//   gatesynth sweep [--config F] --t-min A --t-max B --points M [overrides] [--out sweep.csv]
//
// Exit codes: 0 success, 2 solver non-convergence, 3 degenerate target,
// 4 configuration error.

#include "gatesynth/io.hpp"
#include "gatesynth/synthesis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kConfigError = 4;

struct Overrides {
  std::optional<std::string> config;
  std::optional<int> n_levels, n_modes, n_steps, quadrature_points, substeps, max_iters;
  std::optional<double> horizon, energy, epsilon, lambda0;
  std::optional<std::string> target, target_file, kernel_normalization;
  std::optional<double> t_min, t_max;
  std::optional<int> points, threads;
  std::string out;
  std::string potential;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "YAML config file; flags override its keys");
  cmd->add_option("--n-levels", o.n_levels, "Truncation level N");
  cmd->add_option("--modes", o.n_modes, "Controlled sine modes P (default N)");
  cmd->add_option("--steps", o.n_steps, "Time steps K");
  cmd->add_option("--horizon", o.horizon, "Gate time T");
  cmd->add_option("--energy", o.energy, "Energy budget E");
  cmd->add_option("--epsilon", o.epsilon, "Perturbation strength");
  cmd->add_option("--target", o.target, "dft | matrix | kernel")
      ->check(CLI::IsMember({"dft", "matrix", "kernel"}));
  cmd->add_option("--target-file", o.target_file, "Matrix (or kernel) target file");
  cmd->add_option("--quadrature-points", o.quadrature_points, "Kernel quadrature grid M");
  cmd->add_option("--kernel-normalization", o.kernel_normalization, "paper | orthonormal")
      ->check(CLI::IsMember({"paper", "orthonormal"}));
  cmd->add_option("--substeps", o.substeps, "Propagator substeps per time step");
  cmd->add_option("--lambda0", o.lambda0, "Initial Lagrange multiplier");
  cmd->add_option("--max-iters", o.max_iters, "Solver iteration cap");
  cmd->add_option("--out", o.out, "Output CSV (stdout if omitted)");
}

gatesynth::SweepConfig resolve(const Overrides& o) {
  gatesynth::SweepConfig sweep;
  if (o.config) gatesynth::apply_config_file(*o.config, sweep);
  auto& run = sweep.base;
  if (o.n_levels) run.n_levels = *o.n_levels;
  if (o.n_modes) run.n_modes = *o.n_modes;
  if (o.n_steps) run.n_steps = *o.n_steps;
  if (o.horizon) run.horizon = *o.horizon;
  if (o.energy) run.energy_budget = *o.energy;
  if (o.epsilon) run.epsilon = *o.epsilon;
  if (o.target_file) {
    run.target.path = *o.target_file;
    if (!o.target && run.target.kind == gatesynth::TargetSpec::Kind::kDft) {
      run.target.kind = gatesynth::TargetSpec::Kind::kMatrixFile;
    }
  }
  if (o.target) {
    if (*o.target == "dft") run.target.kind = gatesynth::TargetSpec::Kind::kDft;
    if (*o.target == "matrix") run.target.kind = gatesynth::TargetSpec::Kind::kMatrixFile;
    if (*o.target == "kernel") run.target.kind = gatesynth::TargetSpec::Kind::kKernelFile;
  }
  if (o.quadrature_points) run.target.quadrature_points = *o.quadrature_points;
  if (o.kernel_normalization) {
    run.target.normalization = *o.kernel_normalization == "orthonormal"
                                   ? gatesynth::KernelNormalization::kOrthonormal
                                   : gatesynth::KernelNormalization::kPaperDiscrete;
  }
  if (o.substeps) run.substeps = *o.substeps;
  if (o.lambda0) run.solver.lambda0 = *o.lambda0;
  if (o.max_iters) run.solver.max_iters = *o.max_iters;
  if (o.t_min) sweep.t_min = *o.t_min;
  if (o.t_max) sweep.t_max = *o.t_max;
  if (o.points) sweep.points = *o.points;
  if (o.threads) sweep.threads = *o.threads;
  return sweep;
}

template <typename Writer>
bool emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "gatesynth: cannot write '" << path << "'\n";
    return false;
  }
  write(out);
  return static_cast<bool>(out);
}

int do_run(const Overrides& o) {
  gatesynth::SweepConfig sweep;
  gatesynth::SynthesisReport report;
  try {
    sweep = resolve(o);
    report = gatesynth::run_synthesis(sweep.base);
  } catch (const std::invalid_argument& e) {
    std::cerr << "gatesynth: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "gatesynth: config error: " << e.what() << '\n';
    return kConfigError;
  }

  if (!emit(o.out, [&](std::ostream& s) { gatesynth::write_report_csv(s, report); })) {
    return kConfigError;
  }
  if (!o.potential.empty()) {
    const gatesynth::ControlField field(sweep.base.grid(), report.v_opt);
    if (!emit(o.potential, [&](std::ostream& s) { gatesynth::write_potential_csv(s, field); })) {
      return kConfigError;
    }
  }
  for (const auto& w : report.warnings) std::cerr << "gatesynth: warning: " << w << '\n';
  const int code = gatesynth::exit_code(report);
  if (code == 3) std::cerr << "gatesynth: degenerate target: the free evolution already matches "
                              "the linear term; no control direction lowers the error\n";
  if (code == 2) std::cerr << "gatesynth: solver did not converge\n";
  return code;
}

int do_sweep(const Overrides& o) {
  std::vector<gatesynth::SweepRow> rows;
  try {
    rows = gatesynth::run_sweep(resolve(o));
  } catch (const std::invalid_argument& e) {
    std::cerr << "gatesynth: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "gatesynth: config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (!emit(o.out, [&](std::ostream& s) { gatesynth::write_sweep_csv(s, rows); })) {
    return kConfigError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize box-potential controls whose Dyson gate approximates a target"};
  app.require_subcommand(1);

  Overrides run_opts;
  CLI::App* run = app.add_subcommand("run", "Single synthesis; writes a key,value report");
  add_common(run, run_opts);
  run->add_option("--emit-potential", run_opts.potential, "Write V_p(r tau) as a P x K CSV");

  Overrides sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "NSER versus gate time T");
  add_common(sweep, sweep_opts);
  sweep->add_option("--t-min", sweep_opts.t_min, "Smallest T");
  sweep->add_option("--t-max", sweep_opts.t_max, "Largest T");
  sweep->add_option("--points", sweep_opts.points, "Number of T values");
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (*run) return do_run(run_opts);
  return do_sweep(sweep_opts);
}
