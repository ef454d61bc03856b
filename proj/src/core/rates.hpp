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

// Worst-case one-step contraction rates of the proximal gradient method,
// F(x₂) − F_* ≤ ρ(γ)·(F(x₁) − F_*), for the four (function class, inequality)
// combinations, together with the step sizes minimizing them.
//
//   convex/PL      (0, 3/(2L)]     1/(2γμ + 1)
//                  (3/(2L), 2/L)   (Lγ−1)² / ((Lγ−1)² − Lγ²μ + 2γμ)
//   nonconvex/PL   (0, √3/L]       (Lγ+1)² / ((Lγ+1)² + Lγ²μ + 2γμ)
//                  (√3/L, 2/L)     (Lγ−1)² / ((Lγ−1)² − Lγ²μ + 2γμ)
//   nonconvex/RPL  (0, 2/L)        (L + μ(Lγ−1)² − μ) / L
//   convex/RPL     (0, 1/L]        (1 − γμ)/(1 + γμ)
//                  (1/L, 3/(2L)]   (−2Lγ²μ + Lγ + 3γμ − 2)/(Lγ − γμ − 2)
//                  (3/(2L), 2/L)   as convex/PL on that interval

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "classes.hpp"

namespace pgmrate {

struct RateQuery {
  FnClass fn_class = FnClass::convex;
  Inequality ineq = Inequality::pl;
  double L = 1.0;
  double mu = 0.1;
  double gamma = 1.0;
};

struct RateResult {
  double rho = 1.0;
  /// Which piece fired, e.g. "convex-pl:1". Stable across releases.
  std::string branch;
};

/// Validated rate. Rejects γ ∉ (0, 2/L), μ ≤ 0, and μ > L for the convex
/// classes and for nonconvex/RPL (where μ > L would make ρ negative).
RateResult rate(const RateQuery& q);

/// The same piecewise formula with only γ ∈ (0, 2/L) and μ > 0 enforced.
/// Used where μ > L is meaningful, e.g. worst-case search with sharp h.
RateResult rate_formula(const RateQuery& q);

/// max-of-pieces display form of the same rates; agrees with `rate` on every
/// interval (checked in tests).
double rate_max_form(const RateQuery& q);

struct OptimalStep {
  double gamma = 0.0;
  double rho = 1.0;
  std::string branch;
};

/// γ* minimizing the worst-case rate over (0, 2/L):
/// √3/L (nonconvex/PL), 3/(2L) (convex/PL), 1/L (nonconvex/RPL), and for
/// convex/RPL 3/(2L) when μ ≤ L/9, else 2/(√L(√L + √μ)). Convex/RPL
/// requires μ < L.
OptimalStep optimal_step(FnClass fn_class, Inequality ineq, double L, double mu);

/// Stationary point 2/(√L(√L + √μ)) of the middle convex/RPL piece,
/// regardless of whether it lies inside (1/L, 3/(2L)].
double rpl_interior_step(double L, double mu);

/// 1/(1 + γμ(2 − γL)), valid for γ ∈ (0, 2/L).
double baseline_garrigos(double L, double mu, double gamma);

/// (1 − γμ)/(1 + γμ), valid only for γ ∈ (0, 1/L].
double baseline_zhang(double L, double mu, double gamma);

struct RateCurveRow {
  double gamma = 0.0;
  double rate = 0.0;
  std::string branch;
  double garrigos = 0.0;
  std::optional<double> zhang;  // absent for γ > 1/L
};

std::vector<RateCurveRow> rate_curve(FnClass fn_class, Inequality ineq, double L,
                                     double mu, const std::vector<double>& gammas);

/// n points a + (b − a)·k/(n + 1), k = 1..n, strictly inside (a, b).
std::vector<double> open_grid(double a, double b, int n);

/// CSV: gamma,rate,branch,baseline_garrigos,baseline_zhang.
void write_rate_curve_csv(const std::vector<RateCurveRow>& rows, std::ostream& out);
void write_rate_curve_csv(const std::vector<RateCurveRow>& rows,
                          const std::filesystem::path& path);

}  // namespace pgmrate
