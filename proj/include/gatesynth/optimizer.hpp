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

// optimizer.hpp: energy-constrained minimization of the quadratic model
//
//   F(V, lambda) = V^T Q V + b^T V + lambda (V^T R V - E)
//
// by alternating the multiplier and the control vector. For fixed lambda
// the stationary V solves (Q + lambda R) V = -b/2; lambda is then moved by
// a safeguarded Newton step toward V^T R V = E. Iterates stay in the
// interval where Q + lambda R is positive definite, so a converged point
// is the minimizer of the model on the constraint ellipsoid.

#pragma once

#include "gatesynth/assembly.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gatesynth {

struct SolverConfig {
  double lambda0 = 0.0;
  int max_iters = 200;
  double tol_v = 1e-10;           // relative change in V between iterates
  double tol_constraint = 1e-8;   // |V^T R V - E| / E
  int damping_after = 20;         // undamped iterations before damping engages
  double damping = 0.5;           // theta in lambda <- (1-theta) lambda + theta lambda_new

  void validate() const;
};

enum class SolverStatus {
  kConverged,
  kMaxIterations,
  kDegenerateTarget,  // b == 0: every point of the ellipsoid is stationary in b
};

const char* to_string(SolverStatus status);

struct IterationRecord {
  double lambda = 0.0;
  double constraint_residual = 0.0;  // V^T R V - E
  double objective = 0.0;
};

struct SolverResult {
  Eigen::VectorXd v_opt;
  double lambda_opt = 0.0;
  int iterations = 0;
  bool converged = false;
  SolverStatus status = SolverStatus::kMaxIterations;
  bool hard_case = false;
  std::vector<std::string> warnings;
  std::vector<IterationRecord> trace;
};

double objective(const QuadraticProgram& program, const Eigen::VectorXd& v, double lambda);

struct KktResiduals {
  double stationarity = 0.0;  // ||2 Q V + b + 2 lambda R V||_2
  double constraint = 0.0;    // V^T R V - E
};

KktResiduals kkt_residuals(const QuadraticProgram& program, const Eigen::VectorXd& v,
                           double lambda);

SolverResult solve_fixed_point(const QuadraticProgram& program, const SolverConfig& config = {});

}  // namespace gatesynth
