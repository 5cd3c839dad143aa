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

// spectral.hpp: particle-in-a-box eigenbasis, triple-sine overlaps, and
// target gates. Natural units throughout: hbar = 1, mass = 1, box [0, 1].

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace gatesynth {

using Complex = std::complex<double>;

// E_n = n^2 pi^2 / 2 for n >= 1. Throws std::domain_error otherwise.
double energy(int n);

// omega[n, m] = E_n - E_m.
double bohr_frequency(int n, int m);

// Unperturbed spectrum truncated to the lowest N levels.
class SpectralBasis {
 public:
  explicit SpectralBasis(int n_levels);

  int n_levels() const noexcept { return n_levels_; }

  // 1-based level index, as in the physics.
  double energy(int n) const { return energies_(n - 1); }
  double bohr(int n, int m) const { return energies_(n - 1) - energies_(m - 1); }

  const Eigen::VectorXd& energies() const noexcept { return energies_; }

  // Bohr table with omega(i, j) = E_{i+1} - E_{j+1} (0-based storage).
  const Eigen::MatrixXd& bohr_table() const noexcept { return bohr_; }

  // diag(exp(sign * i * E_n * t)).
  Eigen::VectorXcd phases(double t, int sign = +1) const;

 private:
  int n_levels_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd bohr_;
};

// Closed-form gamma[m, n, p] = 2 int_0^1 sin(m pi x) sin(n pi x) sin(p pi x) dx.
double gamma_closed(int m, int n, int p);

// Left Riemann sum of the same integral on r / M, r = 0..M-1. Cross-check
// only; the pipeline uses gamma_closed.
double gamma_quadrature(int m, int n, int p, int grid_points);

// gamma[m, n, p] for 1 <= m, n <= N (levels) and 1 <= p <= P (modes).
// Immutable after construction.
class OverlapTable {
 public:
  OverlapTable(int n_levels, int n_modes);

  int n_levels() const noexcept { return n_levels_; }
  int n_modes() const noexcept { return n_modes_; }

  // 1-based, mode index last.
  double operator()(int m, int n, int p) const {
    return values_[flat(m, n, p)];
  }

 private:
  std::size_t flat(int m, int n, int p) const {
    return (static_cast<std::size_t>(m - 1) * n_levels_ + (n - 1)) * n_modes_ + (p - 1);
  }

  int n_levels_;
  int n_modes_;
  std::vector<double> values_;
};

enum class GateRole { kTarget, kResidual, kEvolved };

struct GateMatrix {
  Eigen::MatrixXcd entries;
  GateRole role = GateRole::kTarget;
  // Set when a target is not unitary to 1e-6 (kernel-derived targets).
  bool non_unitary = false;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }
};

// ||U^H U - I||_F
double unitarity_defect(const Eigen::MatrixXcd& u);

// U[m, n] = exp(2 pi i (m-1)(n-1) / N) / sqrt(N).
GateMatrix dft_gate(int n);

using Kernel = std::function<Complex(double x, double y)>;

enum class KernelNormalization {
  // (1 / M^2) sum_{r,s} U(r/M, s/M) sin(m pi r/M) sin(n pi s/M)
  kPaperDiscrete,
  // Same sum with prefactor 2 / M^2; the Riemann sum of 2 int int.
  kOrthonormal,
};

GateMatrix gate_from_kernel(const Kernel& kernel, int n, int grid_points,
                            KernelNormalization norm = KernelNormalization::kPaperDiscrete);

// W_d = diag(exp(i E_m T)) U_d - I.
GateMatrix target_residual(const GateMatrix& target, const SpectralBasis& basis, double horizon);

// Partial trace over the second and third factors of an N^3-dimensional
// operator indexed (n, m, p) with n slowest.
GateMatrix partial_trace_23(const GateMatrix& w, int n);

}  // namespace gatesynth
