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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "problem.hpp"

namespace pgmrate {

struct PgmConfig {
  double step = 0.0;
  int max_iters = 100'000;
  double stop_tol = 1e-10;
  bool record_subgradients = true;
};

/// One recorded iterate x_i. `s_next` is the prox-certified s_{i+1} ∈ ∂h(x_{i+1})
/// produced by the step out of x_i; it and `g` are empty when subgradient
/// recording is off, and both are empty on the final (unstepped) iterate.
struct IterateRecord {
  Vector x;
  double f = 0.0;
  double h = 0.0;
  double objective = 0.0;
  double residual_norm = 0.0;
  Vector g;
  Vector s_next;
};

struct Trace {
  double step = 0.0;
  std::vector<IterateRecord> iterates;
  Vector final_point;
  int iterations = 0;  // prox-gradient steps taken
  bool converged = false;
  /// Set when F increased between consecutive iterates.
  bool monotone = true;
  std::optional<double> optimal_value;
  /// (F_{i+1} − F_*)/(F_i − F_*) for steps whose F_i − F_* is significant;
  /// NaN where not reported. Empty when F_* is unknown.
  std::vector<double> contraction;
};

struct Residual {
  Vector g;  // G_γ(x)
  double norm = 0.0;
};

/// Proximal residual G_γ(x) = (x − prox_{γh}(x − γ∇f(x)))/γ.
Residual residual(const CompositeProblem& problem, double gamma, const Vector& x);

/// Proximal gradient iteration x_{i+1} = prox_{γh}(x_i − γ∇f(x_i)); stops at
/// max_iters steps or once ‖G_γ(x_i)‖ ≤ stop_tol. Throws DomainError for a
/// step outside (0, 2/L) or a non-finite value/gradient.
Trace run_pgm(const CompositeProblem& problem, const PgmConfig& config,
              const Vector& x1);

/// Minimum significant gap used when forming contraction factors.
double significance_floor(double fstar, double extra_uncertainty = 0.0) noexcept;

/// Fills trace.contraction against F_*.
void attach_optimal_value(Trace& trace, double fstar,
                          double extra_uncertainty = 0.0);

struct FstarEstimate {
  double value = 0.0;
  Vector point;
  int iterations = 0;
  double residual_norm = 0.0;
  bool stale = false;  // residual tolerance not reached within the budget
};

/// Best objective value found by a long run with step 1/L; `config.step`
/// is ignored.
FstarEstimate estimate_fstar(const CompositeProblem& problem,
                             const PgmConfig& config, const Vector& x1);

/// CSV with columns iter,F,gap,residual_norm,contraction.
void write_trace_csv(const Trace& trace, std::ostream& out);
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

}  // namespace pgmrate
