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

// propagation.hpp: the second-order Dyson gate of a control field and an
// exact truncated-basis propagator used to verify it.

#pragma once

#include "gatesynth/assembly.hpp"
#include "gatesynth/spectral.hpp"

#include <Eigen/Dense>

#include <span>

namespace gatesynth {

// sum_p gamma[m, n, p] v[p]; real symmetric N x N.
Eigen::MatrixXd potential_matrix(std::span<const double> v_row, const OverlapTable& gamma,
                                 int n_levels);

// Interaction-picture gate W(T) = I + order1 + order2 on the control grid:
//   order1 = -i eps tau sum_r V~_r
//   order2 = -eps^2 tau^2 sum_{r2 < r1} V~_{r1} V~_{r2}
// with V~_r[m, n] = M_r[m, n] exp(i omega[m, n] r tau).
struct DysonGate {
  Eigen::MatrixXcd order1;
  Eigen::MatrixXcd order2;
  Eigen::MatrixXcd assembled;
  double epsilon = 1.0;
};

DysonGate dyson_gate(const ControlField& field, const OverlapTable& gamma,
                     const SpectralBasis& basis, double epsilon);

// exp(-i T H0) W(T)
Eigen::MatrixXcd physical_gate(const DysonGate& gate, const SpectralBasis& basis, double horizon);

// ||W_d - order1 - order2||^2 with the eps^3 and eps^4 cross terms dropped:
// ||W_d||^2 - 2 Re Tr(W_d^H (order1 + order2)) + ||order1||^2.
// This is the quantity the assembled quadratic model represents.
double truncated_gate_error(const GateMatrix& residual, const DysonGate& gate);

enum class PropagatorMethod {
  // U <- exp(-i (H0 + eps M_r) tau) U, the control held constant over each step.
  kSchrodingerHold,
  // W <- exp(-i eps tau V~_r) W, the rotated perturbation held constant over
  // each step; its Dyson expansion reproduces order1 exactly.
  kInteractionHold,
};

struct PropagatorResult {
  Eigen::MatrixXcd u_t;  // physical-picture U(T)
  int substeps = 1;
  PropagatorMethod method = PropagatorMethod::kSchrodingerHold;
};

PropagatorResult exact_propagate(const ControlField& field, const OverlapTable& gamma,
                                 const SpectralBasis& basis, double epsilon,
                                 int substeps_per_tau = 1,
                                 PropagatorMethod method = PropagatorMethod::kSchrodingerHold);

// exp(-i H tau) for Hermitian H via its eigendecomposition.
Eigen::MatrixXcd hermitian_exponential(const Eigen::MatrixXcd& h, double tau);

// ||U_d - U_T||_F^2 / ||U_d||_F^2
double nser(const GateMatrix& target, const GateMatrix& evolved);
double nser(const Eigen::MatrixXcd& target, const Eigen::MatrixXcd& evolved);

}  // namespace gatesynth
