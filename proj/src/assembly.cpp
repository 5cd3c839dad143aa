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

#include "gatesynth/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatesynth {

namespace {

void require_consistent(const OverlapTable& gamma, const SpectralBasis& basis,
                        const DesignGrid& grid, const char* what) {
  if (basis.n_levels() != grid.n_levels() || gamma.n_levels() != grid.n_levels() ||
      gamma.n_modes() < grid.n_modes()) {
    throw std::invalid_argument(std::string(what) + ": basis, overlap table and grid disagree");
  }
}

void require_residual(const GateMatrix& residual, const DesignGrid& grid, const char* what) {
  if (residual.dim() != grid.n_levels()) {
    throw std::invalid_argument(std::string(what) + ": residual dimension mismatch");
  }
}

// Interaction-picture matrix of the unit mode p at time r*tau:
// G[m, n] = gamma[m, n, p] exp(i omega[m, n] r tau).
Eigen::MatrixXcd rotated_mode(const OverlapTable& gamma, const SpectralBasis& basis, int p,
                              double t) {
  const int n_levels = basis.n_levels();
  Eigen::MatrixXcd g(n_levels, n_levels);
  for (int m = 0; m < n_levels; ++m)
    for (int n = 0; n < n_levels; ++n)
      g(m, n) = gamma(m + 1, n + 1, p) * std::polar(1.0, basis.bohr_table()(m, n) * t);
  return g;
}

}  // namespace

DesignGrid::DesignGrid(int n_levels, int n_modes, int n_steps, double horizon)
    : n_levels_(n_levels), n_modes_(n_modes), n_steps_(n_steps), horizon_(horizon) {
  if (n_levels < 1) throw std::domain_error("DesignGrid: N must be >= 1");
  if (n_modes < 1) throw std::domain_error("DesignGrid: P must be >= 1");
  if (n_steps < 2) throw std::domain_error("DesignGrid: K must be >= 2");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::domain_error("DesignGrid: T must be finite and > 0");
  }
}

int lex_index(int p, int r, int n_steps, int n_modes) {
  if (p < 1 || p > n_modes || r < 0 || r >= n_steps) {
    throw std::out_of_range("lex_index: (p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                            ") outside P=" + std::to_string(n_modes) +
                            ", K=" + std::to_string(n_steps));
  }
  return n_steps * (p - 1) + r;
}

ControlField::ControlField(const DesignGrid& grid)
    : grid_(grid), values_(RowMatrixXd::Zero(grid.n_modes(), grid.n_steps())) {}

ControlField::ControlField(const DesignGrid& grid, const Eigen::VectorXd& flat)
    : ControlField(grid) {
  if (flat.size() != grid.n_vars()) {
    throw std::invalid_argument("ControlField: flat vector has length " +
                                std::to_string(flat.size()) + ", expected " +
                                std::to_string(grid.n_vars()));
  }
  std::copy(flat.data(), flat.data() + flat.size(), values_.data());
}

double ControlField::energy(const Eigen::VectorXd& alpha) const {
  if (alpha.size() != grid_.n_modes()) throw std::invalid_argument("energy: alpha length != P");
  double total = 0.0;
  for (int p = 0; p < grid_.n_modes(); ++p) total += alpha(p) * values_.row(p).squaredNorm();
  return grid_.step() * total;
}

Eigen::VectorXd assemble_beta(const GateMatrix& residual, const OverlapTable& gamma,
                              const SpectralBasis& basis, const DesignGrid& grid) {
  require_consistent(gamma, basis, grid, "assemble_beta");
  require_residual(residual, grid, "assemble_beta");
  const int k_steps = grid.n_steps();
  const double tau = grid.step();
  Eigen::VectorXd beta(grid.n_vars());
  for (int p = 1; p <= grid.n_modes(); ++p) {
    for (int r = 0; r < k_steps; ++r) {
      // sum_{m,n} W[m,n] G[n,m] = Tr(W G)
      const Complex tr = (residual.entries * rotated_mode(gamma, basis, p, r * tau)).trace();
      beta(k_steps * (p - 1) + r) = 4.0 * tau * tr.imag();
    }
  }
  return beta;
}

Eigen::MatrixXd assemble_c(const OverlapTable& gamma, const SpectralBasis& basis,
                           const DesignGrid& grid) {
  require_consistent(gamma, basis, grid, "assemble_c");
  const int n_levels = grid.n_levels();
  const int n_modes = grid.n_modes();
  const int k_steps = grid.n_steps();
  const double tau = grid.step();
  const Eigen::MatrixXd& omega = basis.bohr_table();

  // The entry depends on (r1 - r2) only through an even cosine, so tabulate by lag.
  std::vector<Eigen::MatrixXd> by_lag(k_steps, Eigen::MatrixXd::Zero(n_modes, n_modes));
  for (int lag = 0; lag < k_steps; ++lag) {
    for (int p = 1; p <= n_modes; ++p) {
      for (int q = p; q <= n_modes; ++q) {
        double s = 0.0;
        for (int m = 1; m <= n_levels; ++m)
          for (int n = 1; n <= n_levels; ++n)
            s += gamma(m, n, p) * gamma(m, n, q) * std::cos(omega(m - 1, n - 1) * lag * tau);
        by_lag[lag](p - 1, q - 1) = by_lag[lag](q - 1, p - 1) = tau * tau * s;
      }
    }
  }

  Eigen::MatrixXd c(grid.n_vars(), grid.n_vars());
  for (int p = 0; p < n_modes; ++p)
    for (int q = 0; q < n_modes; ++q)
      for (int r1 = 0; r1 < k_steps; ++r1)
        for (int r2 = 0; r2 < k_steps; ++r2)
          c(k_steps * p + r1, k_steps * q + r2) = by_lag[std::abs(r1 - r2)](p, q);
  return c;
}

Eigen::MatrixXd assemble_d(const GateMatrix& residual, const OverlapTable& gamma,
                           const SpectralBasis& basis, const DesignGrid& grid) {
  require_consistent(gamma, basis, grid, "assemble_d");
  require_residual(residual, grid, "assemble_d");
  const int n_modes = grid.n_modes();
  const int k_steps = grid.n_steps();
  const double tau = grid.step();

  // rotated[a][r] is G_a(r); later[b][r] = W_d G_b(r). Then
  // D[lex(a,r1), lex(b,r2)] = tau^2 Re Tr(W_d G_b(r2) G_a(r1)).
  std::vector<std::vector<Eigen::MatrixXcd>> rotated(n_modes), weighted(n_modes);
  for (int a = 0; a < n_modes; ++a) {
    rotated[a].reserve(k_steps);
    weighted[a].reserve(k_steps);
    for (int r = 0; r < k_steps; ++r) {
      rotated[a].push_back(rotated_mode(gamma, basis, a + 1, r * tau));
      weighted[a].push_back(residual.entries * rotated[a].back());
    }
  }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(grid.n_vars(), grid.n_vars());
  for (int a = 0; a < n_modes; ++a) {
    for (int r1 = 1; r1 < k_steps; ++r1) {
      const Eigen::MatrixXcd later_t = rotated[a][r1].transpose();
      for (int b = 0; b < n_modes; ++b) {
        for (int r2 = 0; r2 < r1; ++r2) {
          // Tr(X Y) = sum(X .* Y^T)
          const Complex tr = weighted[b][r2].cwiseProduct(later_t).sum();
          d(k_steps * a + r1, k_steps * b + r2) = tau * tau * tr.real();
        }
      }
    }
  }
  return d;
}

QuadraticProgram assemble_program(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                  const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha,
                                  const DesignGrid& grid, double budget, double epsilon,
                                  double residual_norm2) {
  const Eigen::Index n = grid.n_vars();
  if (c.rows() != n || c.cols() != n || d.rows() != n || d.cols() != n || beta.size() != n) {
    throw std::invalid_argument("assemble_program: operand sizes do not match the grid");
  }
  if (alpha.size() != grid.n_modes()) {
    throw std::invalid_argument("assemble_program: alpha must have one weight per mode");
  }
  if ((alpha.array() <= 0.0).any()) throw std::invalid_argument("assemble_program: alpha <= 0");
  if (!(budget > 0.0)) throw std::invalid_argument("assemble_program: budget must be > 0");
  if ((c - c.transpose()).norm() > 1e-12 * (1.0 + c.norm())) {
    throw std::invalid_argument("assemble_program: C is not symmetric");
  }

  QuadraticProgram prog;
  prog.q = epsilon * epsilon * (c + d + d.transpose());
  // Exact symmetry, whatever rounding C carried in.
  prog.q = 0.5 * (prog.q + prog.q.transpose()).eval();
  prog.linear = 0.5 * epsilon * beta;
  prog.r_diag.resize(n);
  const int k_steps = grid.n_steps();
  for (int p = 0; p < grid.n_modes(); ++p)
    prog.r_diag.segment(static_cast<Eigen::Index>(p) * k_steps, k_steps)
        .setConstant(alpha(p) * grid.step());
  prog.budget = budget;
  prog.constant = residual_norm2;
  prog.epsilon = epsilon;
  return prog;
}

double predicted_error(const QuadraticProgram& program, const Eigen::VectorXd& v) {
  if (v.size() != program.size()) throw std::invalid_argument("predicted_error: size mismatch");
  return program.constant + program.linear.dot(v) + v.dot(program.q * v);
}

DesignProblem build_problem(const GateMatrix& target, const DesignGrid& grid,
                            const Eigen::VectorXd& alpha, double budget, double epsilon) {
  SpectralBasis basis(grid.n_levels());
  OverlapTable gamma(grid.n_levels(), grid.n_modes());
  GateMatrix residual = target_residual(target, basis, grid.horizon());
  Eigen::VectorXd beta = assemble_beta(residual, gamma, basis, grid);
  const Eigen::MatrixXd c = assemble_c(gamma, basis, grid);
  const Eigen::MatrixXd d = assemble_d(residual, gamma, basis, grid);
  QuadraticProgram program = assemble_program(c, d, beta, alpha, grid, budget, epsilon,
                                              residual.entries.squaredNorm());
  return DesignProblem{std::move(basis),    std::move(gamma), grid,
                       target,              std::move(residual), std::move(beta),
                       std::move(program)};
}

}  // namespace gatesynth
