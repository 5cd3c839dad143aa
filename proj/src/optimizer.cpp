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

#include "gatesynth/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gatesynth {

namespace {

void require_shape(const QuadraticProgram& program, const Eigen::VectorXd& v, const char* what) {
  const Eigen::Index n = program.size();
  if (program.q.cols() != n || program.linear.size() != n || program.r_diag.size() != n ||
      v.size() != n) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

double r_norm2(const QuadraticProgram& program, const Eigen::VectorXd& v) {
  return v.dot(program.r_diag.cwiseProduct(v));
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(tol_v > 0.0) || !(tol_constraint > 0.0)) {
    throw std::invalid_argument("SolverConfig: tolerances must be > 0");
  }
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("SolverConfig: damping must be in (0, 1]");
  }
}

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged: return "converged";
    case SolverStatus::kMaxIterations: return "max_iterations";
    case SolverStatus::kDegenerateTarget: return "degenerate_target";
  }
  return "unknown";
}

double objective(const QuadraticProgram& program, const Eigen::VectorXd& v, double lambda) {
  require_shape(program, v, "objective");
  return v.dot(program.q * v) + program.linear.dot(v) +
         lambda * (r_norm2(program, v) - program.budget);
}

KktResiduals kkt_residuals(const QuadraticProgram& program, const Eigen::VectorXd& v,
                           double lambda) {
  require_shape(program, v, "kkt_residuals");
  const Eigen::VectorXd grad =
      2.0 * (program.q * v) + program.linear + 2.0 * lambda * program.r_diag.cwiseProduct(v);
  return {grad.norm(), r_norm2(program, v) - program.budget};
}

SolverResult solve_fixed_point(const QuadraticProgram& program, const SolverConfig& config) {
  config.validate();
  const Eigen::Index n = program.size();
  require_shape(program, Eigen::VectorXd::Zero(n), "solve_fixed_point");
  if ((program.r_diag.array() <= 0.0).any()) {
    throw std::invalid_argument("solve_fixed_point: R must be positive definite");
  }
  if (!(program.budget > 0.0)) throw std::invalid_argument("solve_fixed_point: E must be > 0");

  SolverResult result;
  result.lambda_opt = config.lambda0;
  if (program.linear.squaredNorm() == 0.0) {
    result.v_opt = Eigen::VectorXd::Zero(n);
    result.status = SolverStatus::kDegenerateTarget;
    result.warnings.emplace_back("degenerate target: linear term is identically zero");
    return result;
  }

  const Eigen::VectorXd half_b = 0.5 * program.linear;
  const double sqrt_budget = std::sqrt(program.budget);

  // Spectrum of R^{-1/2} Q R^{-1/2}: Q + lambda R is positive definite exactly
  // for lambda > -min_eig.
  const Eigen::VectorXd r_inv_sqrt = program.r_diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = r_inv_sqrt.asDiagonal() * program.q * r_inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("solve_fixed_point: eigendecomposition of the scaled Q failed");
  }
  const double lambda_low = -eig.eigenvalues()(0);
  const double q_scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  const double shift = 1e-10 * q_scale;

  double lo = lambda_low;
  double hi = std::numeric_limits<double>::infinity();
  double lambda = config.lambda0;
  if (lambda <= lambda_low + shift) {
    lambda = lambda_low + shift;
    result.warnings.emplace_back("Q + lambda0 R not positive definite; lambda shifted to " +
                                 std::to_string(lambda));
  }

  Eigen::VectorXd v_prev;
  Eigen::VectorXd best_v;
  double best_lambda = lambda;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= config.max_iters; ++it) {
    Eigen::MatrixXd a = program.q;
    a.diagonal() += lambda * program.r_diag;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-14) {
      lambda += shift;
      a.diagonal() += shift * program.r_diag;
      ldlt.compute(a);
      result.warnings.emplace_back("near-singular Q + lambda R at iteration " +
                                   std::to_string(it) + "; regularized");
    }
    const Eigen::VectorXd v = -ldlt.solve(half_b);
    const double vrv = r_norm2(program, v);
    const double residual = vrv - program.budget;
    result.trace.push_back({lambda, residual, objective(program, v, lambda)});
    result.iterations = it;

    if (std::abs(residual) < best_residual) {
      best_residual = std::abs(residual);
      best_v = v;
      best_lambda = lambda;
    }

    const double dv = v_prev.size() == 0 ? std::numeric_limits<double>::infinity()
                                         : (v - v_prev).norm() / std::max(v.norm(), 1e-300);
    if (dv < config.tol_v && std::abs(residual) <= config.tol_constraint * program.budget) {
      result.v_opt = v;
      result.lambda_opt = lambda;
      // The Newton step converges quadratically; one more step is nearly
      // free and usually lands on the constraint to rounding.
      const Eigen::VectorXd w = ldlt.solve(program.r_diag.cwiseProduct(v));
      const double polished =
          lambda + (vrv / v.dot(program.r_diag.cwiseProduct(w))) *
                       (std::sqrt(vrv) - sqrt_budget) / sqrt_budget;
      if (polished > lambda_low && std::isfinite(polished)) {
        Eigen::MatrixXd a2 = program.q;
        a2.diagonal() += polished * program.r_diag;
        const Eigen::VectorXd v2 = -a2.ldlt().solve(half_b);
        if (std::abs(r_norm2(program, v2) - program.budget) < std::abs(residual)) {
          result.v_opt = v2;
          result.lambda_opt = polished;
        }
      }
      result.converged = true;
      result.status = SolverStatus::kConverged;
      return result;
    }
    v_prev = v;

    const double norm_v = std::sqrt(vrv);
    if (norm_v > sqrt_budget) {
      lo = lambda;
    } else {
      hi = lambda;
    }

    // Hard case: the constraint is not reachable along V(lambda) for
    // lambda > lambda_low. Complete V with the bottom eigenvector, which
    // is in the null space of Q + lambda_low R.
    if (norm_v < sqrt_budget && lambda - lambda_low <= 1e-9 * q_scale) {
      const Eigen::VectorXd z = r_inv_sqrt.cwiseProduct(eig.eigenvectors().col(0));
      const double vz = v.dot(program.r_diag.cwiseProduct(z));
      const double disc = std::sqrt(vz * vz + (program.budget - vrv));
      const Eigen::VectorXd plus = v + (-vz + disc) * z;
      const Eigen::VectorXd minus = v + (-vz - disc) * z;
      result.v_opt =
          objective(program, plus, lambda) <= objective(program, minus, lambda) ? plus : minus;
      result.lambda_opt = lambda;
      result.hard_case = true;
      result.converged = true;
      result.status = SolverStatus::kConverged;
      result.warnings.emplace_back("hard case: b orthogonal to the lowest mode of Q");
      return result;
    }

    // Newton step on 1/||V(lambda)||_R - 1/sqrt(E).
    const Eigen::VectorXd w = ldlt.solve(program.r_diag.cwiseProduct(v));
    const double curvature = v.dot(program.r_diag.cwiseProduct(w));
    double next = lambda + (vrv / curvature) * (norm_v - sqrt_budget) / sqrt_budget;
    if (it > config.damping_after) next = (1.0 - config.damping) * lambda + config.damping * next;
    if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : lambda + 2.0 * (lambda - lo) + shift;
    }
    lambda = next;
  }

  result.v_opt = best_v;
  result.lambda_opt = best_lambda;
  result.status = SolverStatus::kMaxIterations;
  result.warnings.emplace_back("no convergence within max_iters; returning best iterate");
  return result;
}

}  // namespace gatesynth
