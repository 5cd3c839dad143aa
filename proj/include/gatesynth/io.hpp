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

// io.hpp: flat-file formats.
//
//   report CSV     key,value rows; vectors as key[i], trace as trace[i].field
//   sweep CSV      T,predicted_error,verified_nser_opt,verified_nser_zero,
//                  lambda,iterations,converged,status
//   potential CSV  P rows of K values, V_p(r tau)
//   matrix file    first line N, then N rows of N entries written re+imi
//   kernel file    first line M, then M rows of M entries U(r/M, s/M)
//   config file    YAML mapping of run keys (see apply_config_file)
//
// Floats are written with 17 significant digits, so values round-trip.

#pragma once

#include "gatesynth/assembly.hpp"
#include "gatesynth/synthesis.hpp"

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gatesynth {

std::string format_double(double x);

// Parses "1.5", "-2i", "0.25-1e-3i", "+i". Throws std::invalid_argument.
std::complex<double> parse_complex(std::string_view text);
std::string format_complex(std::complex<double> z);

Eigen::MatrixXcd read_matrix(std::istream& in);
Eigen::MatrixXcd read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m);

// Samples U(r/M, s/M) on the M x M grid; lookups snap to the nearest node.
struct KernelGrid {
  Eigen::MatrixXcd samples;
  Kernel as_kernel() const;
};
KernelGrid read_kernel_file(const std::string& path);

void write_report_csv(std::ostream& out, const SynthesisReport& report);
SynthesisReport read_report_csv(std::istream& in);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

void write_potential_csv(std::ostream& out, const ControlField& field);

// Applies keys from a YAML mapping onto config. Recognized keys:
// n_levels, n_modes, n_steps, horizon, energy, epsilon, alpha (list),
// target (dft | matrix | kernel), target_file, quadrature_points,
// kernel_normalization (paper | orthonormal), substeps, lambda0,
// max_iters, tol_v, tol_constraint, t_min, t_max, points.
// Unknown keys are an error.
void apply_config_file(const std::string& path, SweepConfig& sweep);

}  // namespace gatesynth
