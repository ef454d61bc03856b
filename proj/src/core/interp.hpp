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

// Pairwise interpolation conditions and discretized PL/RPL inequalities.
// Every predicate returns a signed slack: ≤ 0 means consistent.

#pragma once

#include <string>
#include <vector>

#include "numeric.hpp"

namespace pgmrate {

struct CompositeProblem;
struct Trace;

/// (x, g, value) for a smooth function, or (x, s, value) for the convex part.
struct Triple {
  Vector x;
  Vector g;
  double fv = 0.0;
};

/// L-smooth (possibly nonconvex) functions:
///   f_j − f_i − (L/4)‖x_i−x_j‖² + ½⟨g_i+g_j, x_i−x_j⟩ + (1/4L)‖g_i−g_j‖².
double cond_A(const Triple& i, const Triple& j, double L);

/// L-smooth convex functions:
///   f_j − f_i + ⟨g_j, x_i−x_j⟩ + (1/2L)‖g_i−g_j‖².
double cond_B(const Triple& i, const Triple& j, double L);

/// Closed proper convex functions: h_j − h_i + ⟨s_j, x_i−x_j⟩.
double cond_C(const Triple& i, const Triple& j);

/// Discretized PL at one point, f + h − F_* − ‖g + s‖²/(2μ).
double cond_D(const Triple& f_part, const Triple& h_part, double fstar, double mu);

/// Discretized RPL, f + h − F_* − ‖G_γ(x)‖²/(2μ).
double cond_E(double f, double h, double fstar, double mu, double residual_norm);

/// RPL with G_γ(x_i) written as g_i + s_{i+1}.
double cond_E_prime(double f, double h, const Vector& g, const Vector& s_next,
                    double fstar, double mu);

struct TraceValidation {
  /// max_i ‖γ·G_γ(x_i) − (x_i − x_{i+1})‖ / (1 + ‖x_i‖).
  double max_step_identity_error = 0.0;
  /// max_i ‖x_{i+1} − (x_i − γ(g_i + s_{i+1}))‖ / (1 + ‖x_i‖).
  double max_update_identity_error = 0.0;
  /// max_i ‖G_γ(x_i)‖ − ‖g_i + s_i‖ with s_i certified at x_i (≤ 0 expected).
  double max_residual_vs_subgradient = -1e300;
  /// max_i |E_i − E'_i|.
  double max_e_vs_eprime = 0.0;
  /// Largest D/E slacks over iterates where they were evaluated.
  double max_d = -1e300;
  double max_e = -1e300;
  int checked_points = 0;
  /// Iterates where F increased; D/E are not evaluated there.
  std::vector<int> skipped_points;
};

/// Checks the step identities and the residual/subgradient ordering on every
/// iterate, and the D/E slacks when `fstar` and `mu` are supplied (mu ≤ 0
/// disables them). Requires subgradients recorded in the trace.
TraceValidation validate_trace(const CompositeProblem& problem, const Trace& trace,
                               double fstar = 0.0, double mu = 0.0);

}  // namespace pgmrate
