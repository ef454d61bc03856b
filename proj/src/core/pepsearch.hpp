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

// Primal worst-case search for one PGM step.
//
// Maximizes F(x₂) − F_* over Gram factors V (Gram = V·Vᵀ) and function values,
// with F_* = 0 and F(x₁) − F_* = 1, subject to the same constraint set the
// matching certificate multiplies. Any feasible point is a lower bound on the
// worst-case ratio; the certificate gives the upper bound.

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "classes.hpp"
#include "numeric.hpp"

namespace pgmrate {

struct SearchParams {
  FnClass fn_class = FnClass::convex;
  Inequality ineq = Inequality::pl;
  double L = 1.0;
  double mu = 0.1;
  double gamma = 1.0;
};

struct SearchBudget {
  int restarts = 64;
  int max_outer = 40;   // augmented-Lagrangian rounds per restart
  int max_inner = 500;  // BFGS iterations per round
  double feas_tol = 1e-8;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SearchInstance {
  Matrix v;  // kVectorSymbols × rank
  double f1 = 0.0, f2 = 0.0, h1 = 0.0, h2 = 0.0, fstar = 0.0;
  std::vector<std::pair<ConstraintName, double>> slacks;
  double max_slack = 0.0;

  Matrix gram() const { return v * v.transpose(); }
  double ratio() const { return (f2 + h2 - fstar) / (f1 + h1 - fstar); }
};

struct SearchResult {
  double best_ratio = 0.0;
  double analytic_rate = 0.0;
  double gap = 0.0;  // analytic_rate − best_ratio
  /// best_ratio ≤ analytic_rate + 1e−6.
  bool sound = true;
  int restarts_used = 0;
  int feasible_restarts = 0;
  SearchInstance instance;
};

inline constexpr double kSoundnessTolerance = 1e-6;

/// Constraint set of the certificate family for (class, inequality).
std::vector<ConstraintName> search_constraints(FnClass fn_class, Inequality ineq);

/// Slacks of `constraints` at the Gram matrix and scalars of `inst`, evaluated
/// from scratch.
std::vector<std::pair<ConstraintName, double>> evaluate_slacks(
    const SearchInstance& inst, const std::vector<ConstraintName>& constraints,
    const SearchParams& p);

/// Multistart search. Restart k uses rank 4, 4, 1, 2 cyclically and a seed
/// derived from (budget.seed, k). Throws VerificationError when no restart
/// ends feasible, DomainError for γ ∉ (0, 2/L) or non-positive constants.
SearchResult search_worst_case(const SearchParams& p, const SearchBudget& budget = {});

struct TightnessRow {
  double gamma = 0.0;
  double analytic_rate = 0.0;
  double searched_ratio = 0.0;
  double gap = 0.0;
  int restarts_used = 0;
  bool sound = true;
};

std::vector<TightnessRow> tightness_curve(FnClass fn_class, Inequality ineq, double L,
                                          double mu, const std::vector<double>& gammas,
                                          const SearchBudget& budget = {});

/// CSV: gamma,analytic_rate,searched_ratio,gap,restarts_used.
void write_tightness_csv(const std::vector<TightnessRow>& rows, std::ostream& out);
void write_tightness_csv(const std::vector<TightnessRow>& rows,
                         const std::filesystem::path& path);

}  // namespace pgmrate
