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

// assembly.hpp: time discretization and the quadratic model of the gate
// error energy.
//
// Controls V_p(t) are sampled at t = r*tau, r = 0..K-1 (left-endpoint rule)
// and flattened mode-major, j = K*(p-1) + r. The model is
//
//   ||U_d - U(T)||^2 ~ ||W_d||^2 + b^T V + V^T Q V
//
// with all time-integral measures (tau, tau^2) folded into b, C and D.

#pragma once

#include "gatesynth/spectral.hpp"

#include <Eigen/Dense>

namespace gatesynth {

class DesignGrid {
 public:
  DesignGrid(int n_levels, int n_modes, int n_steps, double horizon);

  int n_levels() const noexcept { return n_levels_; }
  int n_modes() const noexcept { return n_modes_; }
  int n_steps() const noexcept { return n_steps_; }
  double horizon() const noexcept { return horizon_; }
  double step() const noexcept { return horizon_ / n_steps_; }
  int n_vars() const noexcept { return n_modes_ * n_steps_; }

 private:
  int n_levels_;
  int n_modes_;
  int n_steps_;
  double horizon_;
};

// K*(p-1) + r, with p in 1..P and r in 0..K-1. Throws std::out_of_range.
int lex_index(int p, int r, int n_steps, int n_modes);

using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// V_p(r tau) as a P x K row-major array; the storage order is the
// lexicographic flattening, so flat() is a view, not a copy.
class ControlField {
 public:
  explicit ControlField(const DesignGrid& grid);
  ControlField(const DesignGrid& grid, const Eigen::VectorXd& flat);

  const DesignGrid& grid() const noexcept { return grid_; }

  double& operator()(int p, int r) { return values_(p - 1, r); }
  double operator()(int p, int r) const { return values_(p - 1, r); }

  const RowMatrixXd& values() const noexcept { return values_; }
  RowMatrixXd& values() noexcept { return values_; }

  Eigen::Map<const Eigen::VectorXd> flat() const {
    return {values_.data(), values_.size()};
  }

  // tau * sum_p alpha[p] sum_r V_p(r tau)^2
  double energy(const Eigen::VectorXd& alpha) const;

 private:
  DesignGrid grid_;
  RowMatrixXd values_;
};

struct QuadraticProgram {
  Eigen::MatrixXd q;       // symmetric, PK x PK
  Eigen::VectorXd r_diag;  // diagonal of R, alpha[p] * tau
  Eigen::VectorXd linear;  // b, so the model's linear term is b^T V
  double budget = 0.0;     // E
  double constant = 0.0;   // ||W_d||^2
  double epsilon = 1.0;

  Eigen::Index size() const noexcept { return q.rows(); }
};

// beta[lex(p, r)] = tau * 4 * sum_{m,n} gamma[m,n,p] Im(W_d[m,n] exp(i omega[n,m] r tau))
Eigen::VectorXd assemble_beta(const GateMatrix& residual, const OverlapTable& gamma,
                              const SpectralBasis& basis, const DesignGrid& grid);

// C[lex(p,r1), lex(q,r2)] = tau^2 sum_{m,n} gamma[m,n,p] gamma[m,n,q] cos(omega[m,n](r1-r2) tau)
Eigen::MatrixXd assemble_c(const OverlapTable& gamma, const SpectralBasis& basis,
                           const DesignGrid& grid);

// Strictly time-ordered (r2 < r1) kernel of
//   int_{t2<t1} Re Tr(W_d V~(t2) V~(t1)) dt2 dt1
// with D[lex(a,r1), lex(b,r2)] = tau^2 sum_{m,n,p} gamma[p,m,a] gamma[n,p,b]
//                                 Re(W_d[m,n] exp(i(omega[p,m] r1 + omega[n,p] r2) tau)).
// Mode a rides on the later time r1 and mode b on the earlier time r2.
Eigen::MatrixXd assemble_d(const GateMatrix& residual, const OverlapTable& gamma,
                           const SpectralBasis& basis, const DesignGrid& grid);

// Q = eps^2 (C + D + D^T), b = (eps / 2) beta, R = diag(alpha[p] tau).
// Throws std::invalid_argument if C is not symmetric or alpha is not positive.
QuadraticProgram assemble_program(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                  const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha,
                                  const DesignGrid& grid, double budget, double epsilon,
                                  double residual_norm2);

// ||W_d||^2 + b^T V + V^T Q V. The O(eps^3)-truncated model; it is not a
// norm and can go negative for large V.
double predicted_error(const QuadraticProgram& program, const Eigen::VectorXd& v);

// Everything the optimizer and the verifier need for one design problem.
struct DesignProblem {
  SpectralBasis basis;
  OverlapTable gamma;
  DesignGrid grid;
  GateMatrix target;
  GateMatrix residual;
  Eigen::VectorXd beta;
  QuadraticProgram program;
};

DesignProblem build_problem(const GateMatrix& target, const DesignGrid& grid,
                            const Eigen::VectorXd& alpha, double budget, double epsilon);

}  // namespace gatesynth
