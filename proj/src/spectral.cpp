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

#include "gatesynth/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace gatesynth {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - (-1)^d) / d, with the removable 0/0 at d = 0 resolved to 0.
double odd_term(int d) {
  if (d % 2 == 0) return 0.0;
  return 2.0 / d;
}

void require_level(int n, const char* what) {
  if (n < 1) {
    throw std::domain_error(std::string(what) + ": index must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

double energy(int n) {
  require_level(n, "energy");
  return 0.5 * n * n * kPi * kPi;
}

double bohr_frequency(int n, int m) {
  require_level(n, "bohr_frequency");
  require_level(m, "bohr_frequency");
  // Difference of the tabulated energies, so omega[n,m] = E_n - E_m holds bit for bit.
  return energy(n) - energy(m);
}

SpectralBasis::SpectralBasis(int n_levels) : n_levels_(n_levels) {
  if (n_levels < 1) throw std::domain_error("SpectralBasis: n_levels must be >= 1");
  energies_.resize(n_levels);
  for (int n = 1; n <= n_levels; ++n) energies_(n - 1) = gatesynth::energy(n);
  bohr_.resize(n_levels, n_levels);
  for (int i = 0; i < n_levels; ++i)
    for (int j = 0; j < n_levels; ++j) bohr_(i, j) = bohr_frequency(i + 1, j + 1);
}

Eigen::VectorXcd SpectralBasis::phases(double t, int sign) const {
  Eigen::VectorXcd out(n_levels_);
  for (int i = 0; i < n_levels_; ++i) out(i) = std::polar(1.0, sign * energies_(i) * t);
  return out;
}

double gamma_closed(int m, int n, int p) {
  require_level(m, "gamma_closed");
  require_level(n, "gamma_closed");
  require_level(p, "gamma_closed");
  // The four terms round differently under relabeling; fix the order so the
  // result is exactly permutation-symmetric.
  if (m > n) std::swap(m, n);
  if (n > p) std::swap(n, p);
  if (m > n) std::swap(m, n);
  const double s = odd_term(p + m - n) + odd_term(p - m + n) - odd_term(p + m + n) -
                   odd_term(p - m - n);
  return s / (2.0 * kPi);
}

double gamma_quadrature(int m, int n, int p, int grid_points) {
  require_level(m, "gamma_quadrature");
  require_level(n, "gamma_quadrature");
  require_level(p, "gamma_quadrature");
  if (grid_points < 2) throw std::domain_error("gamma_quadrature: grid_points must be >= 2");
  const double h = 1.0 / grid_points;
  double sum = 0.0;
  for (int r = 0; r < grid_points; ++r) {
    const double x = r * h;
    sum += std::sin(m * kPi * x) * std::sin(n * kPi * x) * std::sin(p * kPi * x);
  }
  return 2.0 * h * sum;
}

OverlapTable::OverlapTable(int n_levels, int n_modes) : n_levels_(n_levels), n_modes_(n_modes) {
  if (n_levels < 1 || n_modes < 1) {
    throw std::domain_error("OverlapTable: n_levels and n_modes must be >= 1");
  }
  values_.resize(static_cast<std::size_t>(n_levels) * n_levels * n_modes);
  for (int m = 1; m <= n_levels; ++m)
    for (int n = 1; n <= n_levels; ++n)
      for (int p = 1; p <= n_modes; ++p) values_[flat(m, n, p)] = gamma_closed(m, n, p);
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm();
}

GateMatrix dft_gate(int n) {
  if (n < 1) throw std::domain_error("dft_gate: N must be >= 1");
  GateMatrix gate;
  gate.entries.resize(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      // Reduce the exponent mod N so large N keeps full phase accuracy.
      const long long e = (static_cast<long long>(m) * k) % n;
      gate.entries(m, k) = std::polar(scale, 2.0 * kPi * static_cast<double>(e) / n);
    }
  }
  gate.role = GateRole::kTarget;
  return gate;
}

GateMatrix gate_from_kernel(const Kernel& kernel, int n, int grid_points,
                            KernelNormalization norm) {
  if (n < 1) throw std::domain_error("gate_from_kernel: N must be >= 1");
  if (grid_points < 2) throw std::domain_error("gate_from_kernel: M must be >= 2");
  const int grid = grid_points;

  // Sample the kernel once; S(k, r) = sin((k+1) pi r / M).
  Eigen::MatrixXcd samples(grid, grid);
  for (int r = 0; r < grid; ++r)
    for (int s = 0; s < grid; ++s)
      samples(r, s) = kernel(static_cast<double>(r) / grid, static_cast<double>(s) / grid);
  Eigen::MatrixXd sines(n, grid);
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < grid; ++r)
      sines(k, r) = std::sin((k + 1) * kPi * static_cast<double>(r) / grid);

  const double prefactor =
      (norm == KernelNormalization::kOrthonormal ? 2.0 : 1.0) / (static_cast<double>(grid) * grid);

  GateMatrix gate;
  gate.entries = prefactor * (sines.cast<Complex>() * samples * sines.transpose().cast<Complex>());
  gate.role = GateRole::kTarget;
  gate.non_unitary = unitarity_defect(gate.entries) >= 1e-6;
  return gate;
}

GateMatrix target_residual(const GateMatrix& target, const SpectralBasis& basis, double horizon) {
  if (target.dim() != basis.n_levels()) {
    throw std::invalid_argument("target_residual: gate dimension " + std::to_string(target.dim()) +
                                " does not match basis size " +
                                std::to_string(basis.n_levels()));
  }
  if (!(horizon > 0.0)) throw std::domain_error("target_residual: T must be > 0");
  const int n = target.dim();
  GateMatrix w;
  w.entries = basis.phases(horizon).asDiagonal() * target.entries;
  w.entries -= Eigen::MatrixXcd::Identity(n, n);
  w.role = GateRole::kResidual;
  return w;
}

GateMatrix partial_trace_23(const GateMatrix& w, int n) {
  if (n < 1) throw std::domain_error("partial_trace_23: N must be >= 1");
  const long long cube = static_cast<long long>(n) * n * n;
  if (w.entries.rows() != w.entries.cols() || w.entries.rows() != cube) {
    throw std::invalid_argument("partial_trace_23: operator dimension " +
                                std::to_string(w.entries.rows()) + " is not N^3 = " +
                                std::to_string(cube));
  }
  const int inner = n * n;
  GateMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.entries(a, b) = w.entries.block(a * inner, b * inner, inner, inner).trace();
  out.role = w.role;
  return out;
}

}  // namespace gatesynth
