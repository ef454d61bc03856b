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

// One-step rate certificates in Gram space.
//
// A certificate for rate ρ on a step interval is a list of nonnegative
// multipliers m_k on constraints c_k ≤ 0 such that
//
//   (f₂ + h₂ − F_*) − ρ·(f₁ + h₁ − F_*) − Σ m_k·c_k = R
//
// holds identically, with R a negative semidefinite quadratic form. Every
// case here has R = κ‖v‖² for a fixed direction v, or R = 0.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "classes.hpp"
#include "gram.hpp"

namespace pgmrate {

/// Constraint vocabulary. Index 1 is x₁, index 2 is x₂.
///   A_ij  L-smooth interpolation          B_ij  L-smooth convex interpolation
///   C12   convexity of h between x₁, x₂   D2    PL at x₂ with g₂ + s₂
///   E1    RPL at x₁ with G(x₁) = g₁ + s₂  E2    RPL at x₂ bounded through g₂ + s₂
///   Eprime1 is E1 under its alternate name.
enum class ConstraintName { A12, A21, B12, B21, C12, D2, E1, E2, Eprime1 };

std::string_view to_string(ConstraintName c) noexcept;
ConstraintName parse_constraint_name(std::string_view s);

template <class T>
GramExpression<T> build_constraint(ConstraintName name, const T& L, const T& mu,
                                   const T& gamma);

/// f₂ + h₂ − F_*.
template <class T>
GramExpression<T> objective_expression();

/// f₁ + h₁ − F_*.
template <class T>
GramExpression<T> gap_expression();

enum class CaseId {
  nonconvex_pl_1,
  nonconvex_pl_2,
  convex_pl_1,
  convex_pl_2,
  nonconvex_rpl,
  convex_rpl_1,
  convex_rpl_2,
  convex_rpl_3,
};

/// How nonpositivity of the remainder is established in reports.
///   rank_one          R = κ‖v‖², checked by the sign of κ and the spectrum
///   inequality_chain  the combination relaxes RPL at x₂ through ‖G₂‖ ≤ ‖g₂+s₂‖;
///                     R (possibly zero) is checked by its spectrum
enum class RemainderKind { rank_one, inequality_chain };

std::string_view to_string(RemainderKind k) noexcept;

struct StepInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_closed = true;  // lo is always open

  bool contains(double gamma) const noexcept {
    return gamma > lo && (hi_closed ? gamma <= hi : gamma < hi);
  }
  std::string describe() const;
};

struct CaseInfo {
  CaseId id;
  std::string name;  // same label as the rate branch it certifies
  FnClass fn_class;
  Inequality ineq;
  RemainderKind kind;
  std::vector<ConstraintName> constraints;
  std::vector<std::string> multiplier_names;  // aligned with constraints
};

/// All eight cases, in a fixed order.
const std::vector<CaseInfo>& certificate_catalog();
const CaseInfo& case_info(CaseId id);
/// Accepts the case name, e.g. "convex-rpl:2".
CaseId parse_case(std::string_view name);

StepInterval case_interval(CaseId id, double L);

template <class T>
struct CaseTerms {
  T rho{};
  std::vector<T> multipliers;  // aligned with CaseInfo::constraints
  T remainder_coefficient{};
  LinearVec<T> remainder_direction{};

  GramExpression<T> remainder() const {
    return remainder_coefficient * GramExpression<T>::sq_norm(remainder_direction);
  }
};

/// Closed-form multipliers, rate and remainder. Does not check the interval.
template <class T>
CaseTerms<T> case_terms(CaseId id, const T& L, const T& mu, const T& gamma);

/// objective − ρ·gap − Σ m_k·c_k − R; identically zero for a valid certificate.
template <class T>
GramExpression<T> identity_residual(CaseId id, const T& L, const T& mu, const T& gamma);

struct VerifyOptions {
  double multiplier_tol = 1e-14;
  double identity_tol = 1e-11;
  double eigen_tol = 1e-10;
};

enum class CertStatus { passed, negative_multiplier, identity_mismatch, remainder_positive };

std::string_view to_string(CertStatus s) noexcept;

struct MultiplierValue {
  std::string name;
  ConstraintName constraint;
  double value = 0.0;
  bool nonnegative = true;
};

struct CertificateReport {
  CaseId id = CaseId::convex_pl_1;
  double L = 0.0, mu = 0.0, gamma = 0.0;
  double rho = 0.0;
  std::vector<MultiplierValue> multipliers;
  double min_multiplier = 0.0;
  /// max |coefficient| of the identity residual over Q, c and k, divided by
  /// the largest coefficient among the summed terms (at least 1).
  double identity_residual = 0.0;
  double remainder_coefficient = 0.0;
  std::array<double, kVectorSymbols> remainder_eigenvalues{};
  RemainderKind kind = RemainderKind::rank_one;
  CertStatus status = CertStatus::passed;

  bool passed() const noexcept { return status == CertStatus::passed; }
};

/// Throws DomainError if γ is outside the case interval or L, μ ≤ 0.
CertificateReport verify_certificate(CaseId id, double L, double mu, double gamma,
                                     const VerifyOptions& opts = {});

struct ExactReport {
  CaseId id = CaseId::convex_pl_1;
  Rational rho;
  bool identity_exact = false;
  bool multipliers_nonnegative = false;
  bool remainder_nonpositive = false;

  bool passed() const noexcept {
    return identity_exact && multipliers_nonnegative && remainder_nonpositive;
  }
};

/// Same checks in exact rational arithmetic.
ExactReport verify_certificate_exact(CaseId id, const Rational& L, const Rational& mu,
                                     const Rational& gamma);

struct SweepSummary {
  CaseId id = CaseId::convex_pl_1;
  double L = 0.0, mu = 0.0;
  std::size_t points = 0;
  double worst_identity_residual = 0.0;
  double min_multiplier = 0.0;
  double max_remainder_eigenvalue = 0.0;
};

/// Verifies every grid point. A point outside the interval raises DomainError,
/// a failing point raises VerificationError; both name the offending γ.
SweepSummary sweep_verify(CaseId id, double L, double mu, const std::vector<double>& grid,
                          const VerifyOptions& opts = {}, unsigned threads = 1);

/// n points spanning the case interval, including the closed right endpoint.
std::vector<double> case_grid(CaseId id, double L, int n);

struct CaseOutcome {
  SweepSummary summary;
  bool passed = false;
  std::string failure;  // empty when passed
  bool exact_checked = false;
};

/// Sweeps each case over case_grid(id, L, grid), optionally repeating every
/// point in exact arithmetic at the rational value of the double. Per-case
/// failures are recorded; invalid L or μ still throws.
std::vector<CaseOutcome> certify_cases(const std::vector<CaseId>& ids, double L, double mu,
                                       int grid, bool exact, const VerifyOptions& opts = {},
                                       unsigned threads = 1);

/// Structured-text reports (JSON).
std::string report_to_json(const CertificateReport& r);
/// One entry per case: interval, remainder kind, constraints, status, worst
/// identity residual, min multiplier, largest remainder eigenvalue.
std::string certification_report_json(const std::vector<CaseOutcome>& outcomes);

}  // namespace pgmrate
