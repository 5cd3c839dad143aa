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

#include "gatesynth/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gatesynth {

namespace {

void require_field(const ControlField& field, const OverlapTable& gamma,
                   const SpectralBasis& basis, const char* what) {
  const DesignGrid& grid = field.grid();
  if (grid.n_levels() != basis.n_levels() || gamma.n_levels() != basis.n_levels() ||
      gamma.n_modes() < grid.n_modes()) {
    throw std::invalid_argument(std::string(what) + ": field, basis and overlap table disagree");
  }
}

// Column r of the row-major P x K array is strided; gather it.
Eigen::VectorXd step_values(const ControlField& field, int r) {
  return field.values().col(r);
}

// V~_r = diag(e^{i E r tau}) M_r diag(e^{-i E r tau})
Eigen::MatrixXcd rotated_potential(const Eigen::MatrixXd& m, const SpectralBasis& basis,
                                   double t) {
  const Eigen::VectorXcd ph = basis.phases(t);
  return ph.asDiagonal() * m.cast<Complex>() * ph.conjugate().asDiagonal();
}

}  // namespace

Eigen::MatrixXd potential_matrix(std::span<const double> v_row, const OverlapTable& gamma,
                                 int n_levels) {
  if (n_levels != gamma.n_levels() || static_cast<int>(v_row.size()) > gamma.n_modes()) {
    throw std::invalid_argument("potential_matrix: sizes do not match the overlap table");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_levels, n_levels);
  for (int i = 1; i <= n_levels; ++i) {
    for (int j = i; j <= n_levels; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < v_row.size(); ++p)
        s += gamma(i, j, static_cast<int>(p) + 1) * v_row[p];
      m(i - 1, j - 1) = m(j - 1, i - 1) = s;
    }
  }
  return m;
}

DysonGate dyson_gate(const ControlField& field, const OverlapTable& gamma,
                     const SpectralBasis& basis, double epsilon) {
  require_field(field, gamma, basis, "dyson_gate");
  const DesignGrid& grid = field.grid();
  const int n = basis.n_levels();
  const double tau = grid.step();

  Eigen::MatrixXcd first_sum = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd ordered_sum = Eigen::MatrixXcd::Zero(n, n);
  // ordered_sum accumulates V~_{r1} * (sum_{r2 < r1} V~_{r2}); first_sum is
  // that running inner sum before step r1 is added.
  for (int r = 0; r < grid.n_steps(); ++r) {
    const Eigen::VectorXd row = step_values(field, r);
    const Eigen::MatrixXd m = potential_matrix({row.data(), static_cast<std::size_t>(row.size())},
                                               gamma, n);
    const Eigen::MatrixXcd vt = rotated_potential(m, basis, r * tau);
    ordered_sum.noalias() += vt * first_sum;
    first_sum += vt;
  }

  DysonGate gate;
  gate.epsilon = epsilon;
  gate.order1 = Complex(0.0, -epsilon * tau) * first_sum;
  gate.order2 = Complex(-epsilon * epsilon * tau * tau, 0.0) * ordered_sum;
  gate.assembled = Eigen::MatrixXcd::Identity(n, n) + gate.order1 + gate.order2;
  return gate;
}

Eigen::MatrixXcd physical_gate(const DysonGate& gate, const SpectralBasis& basis,
                               double horizon) {
  return basis.phases(horizon, -1).asDiagonal() * gate.assembled;
}

double truncated_gate_error(const GateMatrix& residual, const DysonGate& gate) {
  if (residual.dim() != gate.order1.rows()) {
    throw std::invalid_argument("truncated_gate_error: dimension mismatch");
  }
  const Eigen::MatrixXcd& w = residual.entries;
  const Complex overlap = (w.adjoint() * (gate.order1 + gate.order2)).trace();
  return w.squaredNorm() - 2.0 * overlap.real() + gate.order1.squaredNorm();
}

Eigen::MatrixXcd hermitian_exponential(const Eigen::MatrixXcd& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exponential: eigendecomposition failed");
  }
  Eigen::VectorXcd phase(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phase(i) = std::polar(1.0, -eig.eigenvalues()(i) * tau);
  return eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
}

PropagatorResult exact_propagate(const ControlField& field, const OverlapTable& gamma,
                                 const SpectralBasis& basis, double epsilon, int substeps_per_tau,
                                 PropagatorMethod method) {
  require_field(field, gamma, basis, "exact_propagate");
  if (substeps_per_tau < 1) throw std::domain_error("exact_propagate: substeps must be >= 1");
  const DesignGrid& grid = field.grid();
  const int n = basis.n_levels();
  const double tau = grid.step();
  const double sub = tau / substeps_per_tau;

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (int r = 0; r < grid.n_steps(); ++r) {
    const Eigen::VectorXd row = step_values(field, r);
    const Eigen::MatrixXd m = potential_matrix({row.data(), static_cast<std::size_t>(row.size())},
                                               gamma, n);
    Eigen::MatrixXcd h;
    if (method == PropagatorMethod::kSchrodingerHold) {
      h = (epsilon * m).cast<Complex>();
      h.diagonal() += basis.energies().cast<Complex>();
    } else {
      h = epsilon * rotated_potential(m, basis, r * tau);
    }
    const Eigen::MatrixXcd step = hermitian_exponential(h, sub);
    for (int s = 0; s < substeps_per_tau; ++s) u = step * u;
  }
  if (method == PropagatorMethod::kInteractionHold) {
    u = basis.phases(grid.horizon(), -1).asDiagonal() * u;
  }
  return {u, substeps_per_tau, method};
}

double nser(const Eigen::MatrixXcd& target, const Eigen::MatrixXcd& evolved) {
  if (target.rows() != evolved.rows() || target.cols() != evolved.cols()) {
    throw std::invalid_argument("nser: dimension mismatch");
  }
  const double signal = target.squaredNorm();
  if (signal == 0.0) throw std::domain_error("nser: target gate is zero");
  return (target - evolved).squaredNorm() / signal;
}

double nser(const GateMatrix& target, const GateMatrix& evolved) {
  return nser(target.entries, evolved.entries);
}

}  // namespace gatesynth
