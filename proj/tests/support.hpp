// Copyright 2026 The pgmrate Authors
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

// Independent oracles shared by the unit tests. Nothing here calls into the
// library's eigenvalue or prox code.

#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace testing_support {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Matrix gaussian_matrix(int n, int d, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  Matrix a(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = normal(gen);
  return a;
}

inline Vector gaussian_vector(int n, std::mt19937& gen, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(gen);
  return v;
}

inline Eigen::VectorXd ata_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.transpose() * a);
  return es.eigenvalues();  // ascending
}

// Central differences with step 1e-6·(1+‖x‖).
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Minimizer of a convex scalar function on [lo, hi]: grid scan then golden
// section on the bracketing cells.
inline double minimize_scalar(const std::function<double(double)>& phi, double lo, double hi,
                              int grid = 4001) {
  int best = 0;
  double best_val = phi(lo);
  for (int k = 1; k < grid; ++k) {
    const double t = lo + (hi - lo) * k / (grid - 1);
    const double v = phi(t);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double cell = (hi - lo) / (grid - 1);
  double a = lo + cell * std::max(best - 1, 0);
  double b = lo + cell * std::min(best + 1, grid - 1);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace testing_support
