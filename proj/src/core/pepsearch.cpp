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

#include "pepsearch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include "error.hpp"
#include "rates.hpp"

namespace pgmrate {
namespace {

constexpr Eigen::Index kRows = static_cast<Eigen::Index>(kVectorSymbols);

// A constraint with F_* = 0 and h₁ = 1 − f₁ folded in, over z = [vec V, f₁, f₂, h₂].
struct Compiled {
  Eigen::Matrix4d q;
  double a_f1 = 0.0, a_f2 = 0.0, a_h2 = 0.0, k = 0.0;
};

Compiled compile(const GramExpression<double>& e) {
  Compiled c;
  for (Eigen::Index i = 0; i < kRows; ++i)
    for (Eigen::Index j = 0; j < kRows; ++j)
      c.q(i, j) = e.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const auto at = [&](ScalarSym s) { return e.c[static_cast<std::size_t>(s)]; };
  c.a_f1 = at(ScalarSym::f1) - at(ScalarSym::h1);
  c.a_f2 = at(ScalarSym::f2);
  c.a_h2 = at(ScalarSym::h2);
  c.k = e.k + at(ScalarSym::h1);
  return c;
}

class Problem {
 public:
  Problem(std::vector<Compiled> cons, Eigen::Index rank) : cons_(std::move(cons)), rank_(rank) {}

  Eigen::Index size() const { return kRows * rank_ + 3; }
  std::size_t constraint_count() const { return cons_.size(); }

  // Constraint values and, when `grads` is non-null, their gradients.
  void constraints(const Vector& z, Vector& vals, std::vector<Vector>* grads) const {
    const Eigen::Map<const Matrix> v(z.data(), kRows, rank_);
    const double f1 = z(size() - 3), f2 = z(size() - 2), h2 = z(size() - 1);
    vals.resize(static_cast<Eigen::Index>(cons_.size()));
    if (grads) grads->resize(cons_.size());
    for (std::size_t k = 0; k < cons_.size(); ++k) {
      const Compiled& c = cons_[k];
      const Matrix qv = c.q * v;
      vals(static_cast<Eigen::Index>(k)) =
          (v.array() * qv.array()).sum() + c.a_f1 * f1 + c.a_f2 * f2 + c.a_h2 * h2 + c.k;
      if (grads) {
        Vector& g = (*grads)[k];
        g.resize(size());
        Eigen::Map<Matrix>(g.data(), kRows, rank_) = 2.0 * qv;
        g(size() - 3) = c.a_f1;
        g(size() - 2) = c.a_f2;
        g(size() - 1) = c.a_h2;
      }
    }
  }

  // Augmented Lagrangian of  min −(f₂ + h₂)  s.t.  c(z) ≤ 0.
  double merit(const Vector& z, const Vector& lam, double pen, Vector* grad) const {
    Vector vals;
    std::vector<Vector> grads;
    constraints(z, vals, grad ? &grads : nullptr);
    double m = -(z(size() - 2) + z(size() - 1));
    if (grad) {
      grad->setZero(size());
      (*grad)(size() - 2) = -1.0;
      (*grad)(size() - 1) = -1.0;
    }
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
      const double shifted = std::max(0.0, lam(k) + pen * vals(k));
      m += (shifted * shifted - lam(k) * lam(k)) / (2.0 * pen);
      if (grad && shifted > 0.0) *grad += shifted * grads[static_cast<std::size_t>(k)];
    }
    return m;
  }

 private:
  std::vector<Compiled> cons_;
  Eigen::Index rank_;
};

// Quasi-Newton descent with Armijo backtracking. Returns false on non-finite values.
bool bfgs(const Problem& prob, const Vector& lam, double pen, Vector& z, int max_iter) {
  const Eigen::Index n = z.size();
  Vector g;
  double f = prob.merit(z, lam, pen, &g);
  if (!std::isfinite(f)) return false;
  Matrix h = Matrix::Identity(n, n);
  Vector g_new;
  for (int it = 0; it < max_iter; ++it) {
    if (g.norm() <= 1e-12 * (1.0 + std::abs(f))) break;
    Vector d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    double t = 1.0;
    double f_new = 0.0;
    Vector z_new;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      z_new = z + t * d;
      f_new = prob.merit(z_new, lam, pen, &g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const Vector s = z_new - z;
    const Vector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      const double r = 1.0 / sy;
      const Vector hy = h * y;
      h += (r * r * y.dot(hy) + r) * (s * s.transpose()) -
           r * (hy * s.transpose() + s * hy.transpose());
    }
    const double change = f - f_new;
    z = z_new;
    f = f_new;
    g = g_new;
    if (change <= 1e-16 * (1.0 + std::abs(f))) break;
  }
  return std::isfinite(f);
}

struct RestartOutcome {
  bool finite = false;
  SearchInstance inst;
};

RestartOutcome run_restart(const SearchParams& p, const std::vector<ConstraintName>& names,
                           const std::vector<Compiled>& compiled, Eigen::Index rank,
                           std::uint64_t seed, const SearchBudget& budget) {
  const Problem prob(compiled, rank);
  NormalSampler rng(seed);
  Vector z(prob.size());
  for (Eigen::Index i = 0; i < kRows * rank; ++i) z(i) = 0.5 * rng();
  z(prob.size() - 3) = rng.uniform();
  z(prob.size() - 2) = 0.5 * rng.uniform();
  z(prob.size() - 1) = 0.5 * rng.uniform();

  const auto m = static_cast<Eigen::Index>(prob.constraint_count());
  Vector lam = Vector::Zero(m);
  double pen = 10.0;
  double prev_viol = std::numeric_limits<double>::infinity();
  double prev_obj = std::numeric_limits<double>::quiet_NaN();
  Vector vals;
  RestartOutcome out;
  for (int outer = 0; outer < budget.max_outer; ++outer) {
    if (!bfgs(prob, lam, pen, z, budget.max_inner)) return out;
    prob.constraints(z, vals, nullptr);
    if (!vals.allFinite()) return out;
    const double viol = std::max(0.0, vals.maxCoeff());
    for (Eigen::Index k = 0; k < m; ++k) lam(k) = std::max(0.0, lam(k) + pen * vals(k));
    const double obj = z(prob.size() - 2) + z(prob.size() - 1);
    if (viol <= 0.1 * budget.feas_tol && std::abs(obj - prev_obj) <= 1e-12) break;
    if (viol > 0.25 * prev_viol) pen = std::min(pen * 10.0, 1e8);
    prev_viol = viol;
    prev_obj = obj;
  }

  SearchInstance& inst = out.inst;
  inst.v = Eigen::Map<const Matrix>(z.data(), kRows, rank);
  inst.f1 = z(prob.size() - 3);
  inst.f2 = z(prob.size() - 2);
  inst.h2 = z(prob.size() - 1);
  inst.h1 = 1.0 - inst.f1;
  inst.fstar = 0.0;
  inst.slacks = evaluate_slacks(inst, names, p);
  inst.max_slack = -std::numeric_limits<double>::infinity();
  for (const auto& [name, s] : inst.slacks) inst.max_slack = std::max(inst.max_slack, s);
  out.finite = inst.v.allFinite() && std::isfinite(inst.max_slack) && std::isfinite(inst.ratio());
  return out;
}

}  // namespace

std::vector<ConstraintName> search_constraints(FnClass fn_class, Inequality ineq) {
  using C = ConstraintName;
  if (fn_class == FnClass::convex && ineq == Inequality::pl) return {C::B12, C::B21, C::C12, C::D2};
  if (fn_class == FnClass::convex) return {C::B12, C::B21, C::C12, C::E1, C::E2};
  if (ineq == Inequality::pl) return {C::A12, C::A21, C::C12, C::D2};
  return {C::A12, C::C12, C::E1};
}

std::vector<std::pair<ConstraintName, double>> evaluate_slacks(
    const SearchInstance& inst, const std::vector<ConstraintName>& constraints,
    const SearchParams& p) {
  const Matrix gram = inst.gram();
  const std::array<double, kScalarSymbols> scalars{inst.f1, inst.f2, inst.h1, inst.h2,
                                                   inst.fstar};
  std::vector<std::pair<ConstraintName, double>> out;
  out.reserve(constraints.size());
  for (ConstraintName c : constraints) {
    const auto e = build_constraint<double>(c, p.L, p.mu, p.gamma);
    out.emplace_back(c, e.evaluate(
                            [&](std::size_t i, std::size_t j) {
                              return gram(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j));
                            },
                            scalars));
  }
  return out;
}

SearchResult search_worst_case(const SearchParams& p, const SearchBudget& budget) {
  const RateResult analytic = rate_formula({p.fn_class, p.ineq, p.L, p.mu, p.gamma});
  if (budget.restarts <= 0) throw DomainError("restarts must be positive");
  if (budget.max_outer <= 0 || budget.max_inner <= 0) {
    throw DomainError("search budget must be positive");
  }
  if (!(budget.feas_tol > 0.0)) throw DomainError("feasibility tolerance must be positive");

  const auto names = search_constraints(p.fn_class, p.ineq);
  std::vector<Compiled> compiled;
  for (ConstraintName c : names) {
    compiled.push_back(compile(build_constraint<double>(c, p.L, p.mu, p.gamma)));
  }

  constexpr std::array<Eigen::Index, 4> kRanks{4, 4, 1, 2};
  const auto n = static_cast<std::size_t>(budget.restarts);
  std::vector<RestartOutcome> outcomes(n);
  parallel_for(n, std::max(1u, budget.threads), [&](std::size_t k) {
    outcomes[k] = run_restart(p, names, compiled, kRanks[k % kRanks.size()],
                              mix_seed(budget.seed, k), budget);
  });

  SearchResult res;
  res.analytic_rate = analytic.rho;
  res.restarts_used = budget.restarts;
  bool found = false;
  double least_slack = std::numeric_limits<double>::infinity();
  for (auto& o : outcomes) {
    if (!o.finite) continue;
    least_slack = std::min(least_slack, o.inst.max_slack);
    if (o.inst.max_slack > budget.feas_tol) continue;
    ++res.feasible_restarts;
    const double r = o.inst.ratio();
    if (!found || r > res.best_ratio) {
      res.best_ratio = r;
      res.instance = std::move(o.inst);
      found = true;
    }
  }
  if (!found) {
    throw VerificationError("no feasible instance found in " + std::to_string(budget.restarts) +
                            " restarts (smallest max slack " + format_double(least_slack) +
                            ", tolerance " + format_double(budget.feas_tol) + ")");
  }
  res.gap = res.analytic_rate - res.best_ratio;
  res.sound = res.best_ratio <= res.analytic_rate + kSoundnessTolerance;
  return res;
}

std::vector<TightnessRow> tightness_curve(FnClass fn_class, Inequality ineq, double L,
                                          double mu, const std::vector<double>& gammas,
                                          const SearchBudget& budget) {
  std::vector<TightnessRow> rows;
  rows.reserve(gammas.size());
  for (double g : gammas) {
    const SearchResult r = search_worst_case({fn_class, ineq, L, mu, g}, budget);
    rows.push_back({g, r.analytic_rate, r.best_ratio, r.gap, r.restarts_used, r.sound});
  }
  return rows;
}

void write_tightness_csv(const std::vector<TightnessRow>& rows, std::ostream& out) {
  out << "gamma,analytic_rate,searched_ratio,gap,restarts_used\n";
  for (const auto& r : rows) {
    out << format_double(r.gamma) << ',' << format_double(r.analytic_rate) << ','
        << format_double(r.searched_ratio) << ',' << format_double(r.gap) << ','
        << r.restarts_used << '\n';
  }
}

void write_tightness_csv(const std::vector<TightnessRow>& rows,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_tightness_csv(rows, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pgmrate
