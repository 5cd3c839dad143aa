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

// Brute-force reference implementations used by the tests. Deliberately
// naive: plain loops, no shared code with the library beyond its types.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

inline double energy(int n) { return n * n * kPi * kPi / 2.0; }

// omega_{mn} = E_m - E_n
inline double omega(int m, int n) { return energy(m) - energy(n); }

// 2 int_0^1 sin(m pi x) sin(n pi x) sin(p pi x) dx, composite Simpson.
inline double gamma(int m, int n, int p, int intervals = 20000) {
  auto f = [&](double x) {
    return std::sin(m * kPi * x) * std::sin(n * kPi * x) * std::sin(p * kPi * x);
  };
  const double h = 1.0 / intervals;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 2.0 * s * h / 3.0;
}

// Table g[m][n][p], 1-based (index 0 unused).
struct Gamma {
  int n, p;
  std::vector<double> v;
  Gamma(int n_levels, int n_modes) : n(n_levels), p(n_modes), v((n + 1) * (n + 1) * (p + 1)) {
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        for (int c = 1; c <= p; ++c) v[(a * (n + 1) + b) * (p + 1) + c] = gamma(a, b, c);
  }
  double operator()(int a, int b, int c) const { return v[(a * (n + 1) + b) * (p + 1) + c]; }
};

// V[p-1][r] as nested vectors.
using Field = std::vector<std::vector<double>>;

inline Field random_field(int modes, int steps, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Field f(modes, std::vector<double>(steps));
  for (auto& row : f)
    for (double& x : row) x = u(rng);
  return f;
}

inline Eigen::VectorXd flatten(const Field& f) {
  const int modes = static_cast<int>(f.size());
  const int steps = static_cast<int>(f[0].size());
  Eigen::VectorXd out(modes * steps);
  for (int p = 0; p < modes; ++p)
    for (int r = 0; r < steps; ++r) out(p * steps + r) = f[p][r];
  return out;
}

// Interaction-picture potential at step r:
// Vt[m,n] = sum_p g[m,n,p] V_p(r tau) exp(i omega_{mn} r tau).
inline Eigen::MatrixXcd rotated_potential(const Field& f, const Gamma& g, int r, double tau) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(g.n, g.n);
  for (int m = 1; m <= g.n; ++m)
    for (int n = 1; n <= g.n; ++n) {
      double s = 0.0;
      for (int p = 1; p <= g.p; ++p) s += g(m, n, p) * f[p - 1][r];
      out(m - 1, n - 1) = s * std::exp(cd(0.0, omega(m, n) * r * tau));
    }
  return out;
}

// First and second Dyson terms (interaction picture), triple loops.
struct Dyson {
  Eigen::MatrixXcd a1, a2;
};

inline Dyson dyson(const Field& f, const Gamma& g, double horizon, double eps) {
  const int steps = static_cast<int>(f[0].size());
  const double tau = horizon / steps;
  std::vector<Eigen::MatrixXcd> vt;
  for (int r = 0; r < steps; ++r) vt.push_back(rotated_potential(f, g, r, tau));
  Dyson d{Eigen::MatrixXcd::Zero(g.n, g.n), Eigen::MatrixXcd::Zero(g.n, g.n)};
  for (int r = 0; r < steps; ++r) d.a1 += cd(0.0, -eps * tau) * vt[r];
  for (int m = 0; m < g.n; ++m)
    for (int n = 0; n < g.n; ++n) {
      cd s = 0.0;
      for (int r1 = 0; r1 < steps; ++r1)
        for (int r2 = 0; r2 < r1; ++r2)
          for (int k = 0; k < g.n; ++k) s += vt[r1](m, k) * vt[r2](k, n);
      d.a2(m, n) = -eps * eps * tau * tau * s;
    }
  return d;
}

// exp(i E_m T) U_d[m,n] - delta_mn
inline Eigen::MatrixXcd residual(const Eigen::MatrixXcd& target, double horizon) {
  Eigen::MatrixXcd w = target;
  for (int m = 0; m < w.rows(); ++m) {
    for (int n = 0; n < w.cols(); ++n) w(m, n) *= std::exp(cd(0.0, energy(m + 1) * horizon));
    w(m, m) -= 1.0;
  }
  return w;
}

inline double frob2(const Eigen::MatrixXcd& x) {
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) s += std::norm(x(i, j));
  return s;
}

// Re Tr(A^H B)
inline double re_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += (std::conj(a(i, j)) * b(i, j)).real();
  return s;
}

// Pieces of ||W_d - A1 - A2||^2 truncated at second order:
// linear = -2 Re<W_d, A1>, quadratic = ||A1||^2 - 2 Re<W_d, A2>.
struct Expansion {
  double constant, linear, quadratic;
};

inline Expansion expansion(const Eigen::MatrixXcd& w, const Dyson& d) {
  return {frob2(w), -2.0 * re_inner(w, d.a1), frob2(d.a1) - 2.0 * re_inner(w, d.a2)};
}

// Scaling-and-squaring Taylor exponential of a general complex matrix.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  double norm = 0.0;
  for (int j = 0; j < a.cols(); ++j) norm = std::max(norm, a.col(j).cwiseAbs().sum());
  int squarings = 0;
  while (norm > 0.05) {
    norm /= 2.0;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a / std::pow(2.0, squarings);
  const auto id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = id, sum = id;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// A[a,b] = sum_{m,p} W[(a,m,p),(b,m,p)], a slowest.
inline Eigen::MatrixXcd partial_trace_23(const Eigen::MatrixXcd& w, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) out(a, b) += w(a * n * n + m * n + p, b * n * n + m * n + p);
  return out;
}

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle
