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

#include "certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "error.hpp"
#include "numeric.hpp"

namespace pgmrate {
namespace {

template <class T>
struct Symbols {
  LinearVec<T> x1 = LinearVec<T>::unit(VecSym::x1_minus_xstar);
  LinearVec<T> g1 = LinearVec<T>::unit(VecSym::g1);
  LinearVec<T> g2 = LinearVec<T>::unit(VecSym::g2);
  LinearVec<T> s2 = LinearVec<T>::unit(VecSym::s2);
  LinearVec<T> x2;

  explicit Symbols(const T& gamma) : x2(x1 - gamma * (g1 + s2)) {}
};

template <class T>
GramExpression<T> smooth_pair(const LinearVec<T>& xi, const LinearVec<T>& gi, ScalarSym fi,
                              const LinearVec<T>& xj, const LinearVec<T>& gj, ScalarSym fj,
                              const T& L) {
  using G = GramExpression<T>;
  const LinearVec<T> dx = xi - xj;
  G e = G::scalar(fj) - G::scalar(fi);
  e -= (L / T(4)) * G::sq_norm(dx);
  e += (T(1) / T(2)) * G::inner(gi + gj, dx);
  e += (T(1) / (T(4) * L)) * G::sq_norm(gi - gj);
  return e;
}

template <class T>
GramExpression<T> convex_pair(const LinearVec<T>& xi, const LinearVec<T>& gi, ScalarSym fi,
                              const LinearVec<T>& xj, const LinearVec<T>& gj, ScalarSym fj,
                              const T& L) {
  using G = GramExpression<T>;
  G e = G::scalar(fj) - G::scalar(fi);
  e += G::inner(gj, xi - xj);
  e += (T(1) / (T(2) * L)) * G::sq_norm(gi - gj);
  return e;
}

template <class T>
GramExpression<T> error_bound(ScalarSym f, ScalarSym h, const LinearVec<T>& direction,
                              const T& mu) {
  using G = GramExpression<T>;
  G e = G::scalar(f) + G::scalar(h) - G::scalar(ScalarSym::fstar);
  e -= (T(1) / (T(2) * mu)) * G::sq_norm(direction);
  return e;
}

struct CaseBounds {
  // Interval in units of 1/L; the flags replace an endpoint by √3.
  double lo, hi;
  bool lo_is_sqrt3, hi_is_sqrt3, hi_closed;
};

CaseBounds bounds(CaseId id) {
  switch (id) {
    case CaseId::nonconvex_pl_1: return {0.0, 0.0, false, true, true};
    case CaseId::nonconvex_pl_2: return {0.0, 2.0, true, false, false};
    case CaseId::convex_pl_1: return {0.0, 1.5, false, false, true};
    case CaseId::convex_pl_2: return {1.5, 2.0, false, false, false};
    case CaseId::nonconvex_rpl: return {0.0, 2.0, false, false, false};
    case CaseId::convex_rpl_1: return {0.0, 1.0, false, false, true};
    case CaseId::convex_rpl_2: return {1.0, 1.5, false, false, true};
    case CaseId::convex_rpl_3: return {1.5, 2.0, false, false, false};
  }
  throw UsageError("unknown certificate case");
}

// Exact interval membership on t = Lγ; the √3 endpoint is compared via t².
bool in_interval_exact(CaseId id, const Rational& t) {
  const CaseBounds b = bounds(id);
  const Rational three(3);
  const bool above_lo = b.lo_is_sqrt3 ? (t > 0 && t * t > three)
                                      : t > Rational(static_cast<long long>(b.lo * 2), 2);
  bool below_hi;
  if (b.hi_is_sqrt3) {
    below_hi = t * t <= three;
  } else {
    const Rational hi(static_cast<long long>(b.hi * 2), 2);
    below_hi = b.hi_closed ? t <= hi : t < hi;
  }
  return above_lo && below_hi;
}

template <class T>
double to_double(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return v.template convert_to<double>();
  }
}

void check_constants(double L, double mu) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

void check_in_interval(CaseId id, double L, double gamma) {
  const StepInterval iv = case_interval(id, L);
  if (!iv.contains(gamma)) {
    throw DomainError("gamma=" + format_double(gamma) + " outside " + iv.describe() +
                      " for case " + case_info(id).name);
  }
}

template <class T>
double max_abs_coefficient(const GramExpression<T>& e) {
  double m = 0.0;
  e.for_each_coefficient([&](const T& v) { m = std::max(m, std::abs(to_double(v))); });
  return m;
}

}  // namespace

std::string_view to_string(ConstraintName c) noexcept {
  switch (c) {
    case ConstraintName::A12: return "A12";
    case ConstraintName::A21: return "A21";
    case ConstraintName::B12: return "B12";
    case ConstraintName::B21: return "B21";
    case ConstraintName::C12: return "C12";
    case ConstraintName::D2: return "D2";
    case ConstraintName::E1: return "E1";
    case ConstraintName::E2: return "E2";
    case ConstraintName::Eprime1: return "Eprime1";
  }
  return "?";
}

ConstraintName parse_constraint_name(std::string_view s) {
  for (ConstraintName c :
       {ConstraintName::A12, ConstraintName::A21, ConstraintName::B12, ConstraintName::B21,
        ConstraintName::C12, ConstraintName::D2, ConstraintName::E1, ConstraintName::E2,
        ConstraintName::Eprime1}) {
    if (to_string(c) == s) return c;
  }
  throw UsageError("unknown constraint '" + std::string(s) + "'");
}

template <class T>
GramExpression<T> build_constraint(ConstraintName name, const T& L, const T& mu,
                                   const T& gamma) {
  const Symbols<T> v(gamma);
  using S = ScalarSym;
  switch (name) {
    case ConstraintName::A12: return smooth_pair(v.x1, v.g1, S::f1, v.x2, v.g2, S::f2, L);
    case ConstraintName::A21: return smooth_pair(v.x2, v.g2, S::f2, v.x1, v.g1, S::f1, L);
    case ConstraintName::B12: return convex_pair(v.x1, v.g1, S::f1, v.x2, v.g2, S::f2, L);
    case ConstraintName::B21: return convex_pair(v.x2, v.g2, S::f2, v.x1, v.g1, S::f1, L);
    case ConstraintName::C12: {
      using G = GramExpression<T>;
      G e = G::scalar(S::h2) - G::scalar(S::h1);
      e += G::inner(v.s2, v.x1 - v.x2);
      return e;
    }
    case ConstraintName::D2:
    case ConstraintName::E2: return error_bound(S::f2, S::h2, v.g2 + v.s2, mu);
    case ConstraintName::E1:
    case ConstraintName::Eprime1: return error_bound(S::f1, S::h1, v.g1 + v.s2, mu);
  }
  throw UsageError("unknown constraint");
}

template <class T>
GramExpression<T> objective_expression() {
  using G = GramExpression<T>;
  return G::scalar(ScalarSym::f2) + G::scalar(ScalarSym::h2) - G::scalar(ScalarSym::fstar);
}

template <class T>
GramExpression<T> gap_expression() {
  using G = GramExpression<T>;
  return G::scalar(ScalarSym::f1) + G::scalar(ScalarSym::h1) - G::scalar(ScalarSym::fstar);
}

std::string_view to_string(RemainderKind k) noexcept {
  switch (k) {
    case RemainderKind::rank_one: return "rank-one";
    case RemainderKind::inequality_chain: return "inequality-chain";
  }
  return "?";
}

std::string_view to_string(CertStatus s) noexcept {
  switch (s) {
    case CertStatus::passed: return "passed";
    case CertStatus::negative_multiplier: return "negative-multiplier";
    case CertStatus::identity_mismatch: return "identity-mismatch";
    case CertStatus::remainder_positive: return "remainder-positive";
  }
  return "?";
}

std::string StepInterval::describe() const {
  return "(" + format_double(lo) + ", " + format_double(hi) + (hi_closed ? "]" : ")");
}

const std::vector<CaseInfo>& certificate_catalog() {
  using C = ConstraintName;
  static const std::vector<CaseInfo> catalog{
      {CaseId::nonconvex_pl_1, "nonconvex-pl:1", FnClass::nonconvex, Inequality::pl,
       RemainderKind::rank_one, {C::A12, C::A21, C::C12, C::D2},
       {"alpha1", "alpha2", "beta1", "lambda1"}},
      {CaseId::nonconvex_pl_2, "nonconvex-pl:2", FnClass::nonconvex, Inequality::pl,
       RemainderKind::rank_one, {C::A12, C::A21, C::C12, C::D2},
       {"alpha1", "alpha2", "beta1", "lambda1"}},
      {CaseId::convex_pl_1, "convex-pl:1", FnClass::convex, Inequality::pl,
       RemainderKind::rank_one, {C::B12, C::B21, C::C12, C::D2},
       {"alpha1", "alpha2", "beta1", "lambda1"}},
      {CaseId::convex_pl_2, "convex-pl:2", FnClass::convex, Inequality::pl,
       RemainderKind::rank_one, {C::B12, C::B21, C::C12, C::D2},
       {"alpha1", "alpha2", "beta1", "lambda1"}},
      {CaseId::nonconvex_rpl, "nonconvex-rpl", FnClass::nonconvex, Inequality::rpl,
       RemainderKind::rank_one, {C::A12, C::C12, C::E1}, {"alpha1", "beta1", "lambda1"}},
      {CaseId::convex_rpl_1, "convex-rpl:1", FnClass::convex, Inequality::rpl,
       RemainderKind::inequality_chain, {C::B12, C::C12, C::E1, C::E2},
       {"alpha1", "beta1", "lambda1", "lambda2"}},
      {CaseId::convex_rpl_2, "convex-rpl:2", FnClass::convex, Inequality::rpl,
       RemainderKind::inequality_chain, {C::B12, C::B21, C::C12, C::E1, C::E2},
       {"alpha1", "alpha2", "beta1", "lambda1", "lambda2"}},
      {CaseId::convex_rpl_3, "convex-rpl:3", FnClass::convex, Inequality::rpl,
       RemainderKind::rank_one, {C::B12, C::B21, C::C12, C::E2},
       {"alpha1", "alpha2", "beta1", "lambda1"}},
  };
  return catalog;
}

const CaseInfo& case_info(CaseId id) {
  return certificate_catalog().at(static_cast<std::size_t>(id));
}

CaseId parse_case(std::string_view name) {
  for (const auto& c : certificate_catalog()) {
    if (c.name == name) return c.id;
  }
  throw UsageError("unknown certificate case '" + std::string(name) + "'");
}

StepInterval case_interval(CaseId id, double L) {
  const CaseBounds b = bounds(id);
  const double s3 = std::sqrt(3.0);
  return {(b.lo_is_sqrt3 ? s3 : b.lo) / L, (b.hi_is_sqrt3 ? s3 : b.hi) / L, b.hi_closed};
}

template <class T>
CaseTerms<T> case_terms(CaseId id, const T& L, const T& mu, const T& g) {
  CaseTerms<T> t;
  const T one(1), two(2), three(3), four(4);
  const T Lg = L * g;
  const Symbols<T> v(g);
  // Lγ(g₁ + s₂) − g₁ + g₂, the direction shared by the long-step cases.
  const LinearVec<T> long_dir = Lg * (v.g1 + v.s2) - v.g1 + v.g2;

  auto long_step = [&]() {
    const T den = (Lg - one) * (Lg - one) - Lg * g * mu + two * g * mu;
    const T a1 = (Lg - one) / den;
    const T a2 = (-Lg * Lg + three * Lg - two) / den;
    const T b1 = (Lg - one) * (Lg - one) / den;
    const T l1 = (-Lg * g * mu + two * g * mu) / den;
    t.multipliers = {a1, a2, b1, l1};
    t.remainder_direction = long_dir;
    return den;
  };

  switch (id) {
    case CaseId::nonconvex_pl_1: {
      const T den = (Lg + one) * (Lg + one) + Lg * g * mu + two * g * mu;
      const T a1 = (Lg * Lg + three * Lg + two) / den;
      const T a2 = (Lg + one) / den;
      const T b1 = (Lg + one) * (Lg + one) / den;
      const T l1 = (Lg * g * mu + two * g * mu) / den;
      t.multipliers = {a1, a2, b1, l1};
      t.rho = a1 - a2;
      t.remainder_coefficient = (Lg * Lg - three) / (four * L * den);
      t.remainder_direction = Lg * (v.g1 + v.s2) + v.g1 - v.g2;
      break;
    }
    case CaseId::nonconvex_pl_2: {
      const T den = long_step();
      t.rho = t.multipliers[0] - t.multipliers[1];
      t.remainder_coefficient = (three - Lg * Lg) / (four * L * den);
      break;
    }
    case CaseId::convex_pl_1: {
      const T den = two * g * mu + one;
      t.multipliers = {two / den, one / den, one / den, two * g * mu / den};
      t.rho = one / den;
      t.remainder_coefficient = (two * Lg - three) / (two * L * den);
      t.remainder_direction = v.g1 - v.g2;
      break;
    }
    case CaseId::convex_pl_2:
    case CaseId::convex_rpl_3: {
      const T den = long_step();
      t.rho = t.multipliers[2];
      t.remainder_coefficient = (three - two * Lg) / (two * L * den);
      break;
    }
    case CaseId::nonconvex_rpl: {
      const T l1 = (mu - mu * (Lg - one) * (Lg - one)) / L;
      t.multipliers = {one, one, l1};
      t.rho = one - l1;
      t.remainder_coefficient = -one / (four * L);
      t.remainder_direction = long_dir;
      break;
    }
    case CaseId::convex_rpl_1: {
      const T den = one + g * mu;
      const T l = g * mu / den;
      t.multipliers = {one / den, one / den, l, l};
      t.rho = one - two * l;
      t.remainder_coefficient = (Lg - one) / (two * L * den);
      t.remainder_direction = v.g1 - v.g2;
      break;
    }
    case CaseId::convex_rpl_2: {
      const T dd = two - Lg + g * mu;
      const T l1 = g * mu * (three - two * Lg) / dd;
      const T l2 = g * mu / dd;
      t.multipliers = {one / dd, (Lg - one) / dd, (two - Lg) / dd, l1, l2};
      t.rho = one - l1 - l2;
      t.remainder_coefficient = T(0);
      break;
    }
  }
  return t;
}

template <class T>
GramExpression<T> identity_residual(CaseId id, const T& L, const T& mu, const T& gamma) {
  const CaseTerms<T> terms = case_terms(id, L, mu, gamma);
  const CaseInfo& info = case_info(id);
  GramExpression<T> e = objective_expression<T>();
  e -= terms.rho * gap_expression<T>();
  for (std::size_t k = 0; k < info.constraints.size(); ++k) {
    e -= terms.multipliers[k] * build_constraint(info.constraints[k], L, mu, gamma);
  }
  e -= terms.remainder();
  return e;
}

CertificateReport verify_certificate(CaseId id, double L, double mu, double gamma,
                                     const VerifyOptions& opts) {
  check_constants(L, mu);
  check_in_interval(id, L, gamma);
  const CaseInfo& info = case_info(id);
  const CaseTerms<double> terms = case_terms(id, L, mu, gamma);

  CertificateReport r;
  r.id = id;
  r.L = L;
  r.mu = mu;
  r.gamma = gamma;
  r.rho = terms.rho;
  r.kind = info.kind;
  r.remainder_coefficient = terms.remainder_coefficient;
  r.min_multiplier = std::numeric_limits<double>::infinity();

  double scale = 1.0;
  GramExpression<double> resid = objective_expression<double>();
  const GramExpression<double> rho_gap = terms.rho * gap_expression<double>();
  scale = std::max(scale, max_abs_coefficient(rho_gap));
  resid -= rho_gap;
  for (std::size_t k = 0; k < info.constraints.size(); ++k) {
    const double m = terms.multipliers[k];
    const GramExpression<double> term =
        m * build_constraint(info.constraints[k], L, mu, gamma);
    scale = std::max(scale, max_abs_coefficient(term));
    resid -= term;
    r.multipliers.push_back({info.multiplier_names[k], info.constraints[k], m,
                             m >= -opts.multiplier_tol});
    r.min_multiplier = std::min(r.min_multiplier, m);
  }
  const GramExpression<double> rem = terms.remainder();
  const double rem_scale = max_abs_coefficient(rem);
  scale = std::max(scale, rem_scale);
  resid -= rem;
  r.identity_residual = max_abs_coefficient(resid) / scale;

  Eigen::Matrix4d q;
  for (std::size_t i = 0; i < kVectorSymbols; ++i)
    for (std::size_t j = 0; j < kVectorSymbols; ++j)
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rem.q[i][j];
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(q, Eigen::EigenvaluesOnly);
  for (std::size_t i = 0; i < kVectorSymbols; ++i)
    r.remainder_eigenvalues[i] = eig.eigenvalues()(static_cast<Eigen::Index>(i));

  const double eig_limit = opts.eigen_tol * std::max(1.0, rem_scale);
  bool remainder_ok = r.remainder_eigenvalues.back() <= eig_limit;
  if (info.kind == RemainderKind::rank_one) {
    remainder_ok = remainder_ok && terms.remainder_coefficient <= opts.eigen_tol;
  }

  if (r.min_multiplier < -opts.multiplier_tol) {
    r.status = CertStatus::negative_multiplier;
  } else if (!(r.identity_residual <= opts.identity_tol)) {
    r.status = CertStatus::identity_mismatch;
  } else if (!remainder_ok) {
    r.status = CertStatus::remainder_positive;
  }
  return r;
}

ExactReport verify_certificate_exact(CaseId id, const Rational& L, const Rational& mu,
                                     const Rational& gamma) {
  if (L <= 0) throw DomainError("L must be positive");
  if (mu <= 0) throw DomainError("mu must be positive");
  if (!in_interval_exact(id, L * gamma)) {
    throw DomainError("gamma=" + gamma.str() + " outside the interval of case " +
                      case_info(id).name);
  }
  const CaseTerms<Rational> terms = case_terms(id, L, mu, gamma);
  ExactReport r;
  r.id = id;
  r.rho = terms.rho;
  r.multipliers_nonnegative = std::all_of(terms.multipliers.begin(), terms.multipliers.end(),
                                          [](const Rational& m) { return m >= 0; });
  r.remainder_nonpositive = terms.remainder_coefficient <= 0;
  bool zero = true;
  identity_residual(id, L, mu, gamma).for_each_coefficient([&](const Rational& v) {
    if (v != 0) zero = false;
  });
  r.identity_exact = zero;
  return r;
}

SweepSummary sweep_verify(CaseId id, double L, double mu, const std::vector<double>& grid,
                          const VerifyOptions& opts, unsigned threads) {
  check_constants(L, mu);
  for (double g : grid) check_in_interval(id, L, g);

  SweepSummary s;
  s.id = id;
  s.L = L;
  s.mu = mu;
  s.points = grid.size();
  if (grid.empty()) return s;

  std::vector<CertificateReport> reports(grid.size());
  parallel_for(grid.size(), std::max(1u, threads), [&](std::size_t i) {
    reports[i] = verify_certificate(id, L, mu, grid[i], opts);
  });

  s.min_multiplier = std::numeric_limits<double>::infinity();
  s.max_remainder_eigenvalue = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    if (!r.passed()) {
      throw VerificationError("case " + case_info(id).name + " failed at gamma=" +
                              format_double(r.gamma) + ": " + std::string(to_string(r.status)));
    }
    s.worst_identity_residual = std::max(s.worst_identity_residual, r.identity_residual);
    s.min_multiplier = std::min(s.min_multiplier, r.min_multiplier);
    s.max_remainder_eigenvalue =
        std::max(s.max_remainder_eigenvalue, r.remainder_eigenvalues.back());
  }
  return s;
}

std::vector<double> case_grid(CaseId id, double L, int n) {
  const StepInterval iv = case_interval(id, L);
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  const double denom = iv.hi_closed ? n : n + 1.0;
  for (int k = 1; k <= n; ++k) out.push_back(iv.lo + (iv.hi - iv.lo) * k / denom);
  if (iv.hi_closed) out.back() = iv.hi;
  return out;
}

std::string report_to_json(const CertificateReport& r) {
  nlohmann::ordered_json j;
  const CaseInfo& info = case_info(r.id);
  j["case"] = info.name;
  j["L"] = r.L;
  j["mu"] = r.mu;
  j["gamma"] = r.gamma;
  j["rho"] = r.rho;
  j["status"] = std::string(to_string(r.status));
  j["remainder_kind"] = std::string(to_string(r.kind));
  j["identity_residual"] = r.identity_residual;
  j["remainder_coefficient"] = r.remainder_coefficient;
  j["remainder_eigenvalues"] = r.remainder_eigenvalues;
  auto& ms = j["multipliers"] = nlohmann::ordered_json::array();
  for (const auto& m : r.multipliers) {
    ms.push_back({{"name", m.name},
                  {"constraint", std::string(to_string(m.constraint))},
                  {"value", m.value},
                  {"nonnegative", m.nonnegative}});
  }
  return j.dump(2);
}

std::vector<CaseOutcome> certify_cases(const std::vector<CaseId>& ids, double L, double mu,
                                       int grid, bool exact, const VerifyOptions& opts,
                                       unsigned threads) {
  check_constants(L, mu);
  if (grid < 1) throw DomainError("grid must have at least one point");
  std::vector<CaseOutcome> out;
  for (CaseId id : ids) {
    CaseOutcome o;
    o.summary.id = id;
    o.summary.L = L;
    o.summary.mu = mu;
    const std::vector<double> pts = case_grid(id, L, grid);
    try {
      o.summary = sweep_verify(id, L, mu, pts, opts, threads);
      o.passed = true;
      if (exact) {
        o.exact_checked = true;
        for (double g : pts) {
          if (!verify_certificate_exact(id, Rational(L), Rational(mu), Rational(g)).passed()) {
            o.passed = false;
            o.failure = "exact check failed at gamma=" + format_double(g);
            break;
          }
        }
      }
    } catch (const VerificationError& e) {
      o.failure = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string certification_report_json(const std::vector<CaseOutcome>& outcomes) {
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    const SweepSummary& s = o.summary;
    const CaseInfo& info = case_info(s.id);
    nlohmann::ordered_json c;
    c["case"] = info.name;
    c["class"] = std::string(to_string(info.fn_class));
    c["inequality"] = std::string(to_string(info.ineq));
    c["interval"] = case_interval(s.id, s.L).describe();
    c["remainder_kind"] = std::string(to_string(info.kind));
    auto& cs = c["constraints"] = nlohmann::ordered_json::array();
    for (auto k : info.constraints) cs.push_back(std::string(to_string(k)));
    c["L"] = s.L;
    c["mu"] = s.mu;
    c["status"] = o.passed ? "passed" : "failed";
    if (!o.passed) c["failure"] = o.failure;
    c["exact_checked"] = o.exact_checked;
    if (o.passed && s.points > 0) {
      c["points"] = s.points;
      c["worst_identity_residual"] = s.worst_identity_residual;
      c["min_multiplier"] = s.min_multiplier;
      c["max_remainder_eigenvalue"] = s.max_remainder_eigenvalue;
    }
    passed += o.passed ? 1 : 0;
    cases.push_back(std::move(c));
  }
  nlohmann::ordered_json j;
  j["cases_total"] = outcomes.size();
  j["cases_passed"] = passed;
  j["cases"] = std::move(cases);
  return j.dump(2);
}

#define PGMRATE_INSTANTIATE(T)                                                             \
  template GramExpression<T> build_constraint<T>(ConstraintName, const T&, const T&,       \
                                                 const T&);                                \
  template GramExpression<T> objective_expression<T>();                                    \
  template GramExpression<T> gap_expression<T>();                                          \
  template CaseTerms<T> case_terms<T>(CaseId, const T&, const T&, const T&);               \
  template GramExpression<T> identity_residual<T>(CaseId, const T&, const T&, const T&);

PGMRATE_INSTANTIATE(double)
PGMRATE_INSTANTIATE(Rational)

#undef PGMRATE_INSTANTIATE

}  // namespace pgmrate
