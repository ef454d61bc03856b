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

#include "pgmrate/pgmrate.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "pepsearch.hpp"
#include "pgm.hpp"
#include "problem.hpp"
#include "rates.hpp"

struct pgmrate_problem {
  pgmrate::ProblemDocument doc;
  pgmrate::CompositeProblem problem;
};

struct pgmrate_trace {
  pgmrate::Trace trace;
};

struct pgmrate_experiment {
  pgmrate::ExperimentResult result;
};

namespace {

using namespace pgmrate;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

thread_local std::string g_last_error;

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return PGMRATE_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.category());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PGMRATE_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PGMRATE_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PGMRATE_E_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be NULL");
}

void copy_out(const std::string& s, char* buf, std::size_t cap) {
  if (buf == nullptr) return;
  if (cap == 0 || s.size() + 1 > cap) throw UsageError("output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

FnClass to_fn_class(int v) {
  if (v == PGMRATE_CONVEX) return FnClass::convex;
  if (v == PGMRATE_NONCONVEX) return FnClass::nonconvex;
  throw UsageError("unknown function class " + std::to_string(v));
}

Inequality to_inequality(int v) {
  if (v == PGMRATE_PL) return Inequality::pl;
  if (v == PGMRATE_RPL) return Inequality::rpl;
  throw UsageError("unknown inequality " + std::to_string(v));
}

SearchBudget to_budget(const pgmrate_search_budget* b) {
  SearchBudget out;
  if (b == nullptr) return out;
  out.restarts = b->restarts;
  out.max_outer = b->max_outer;
  out.max_inner = b->max_inner;
  out.feas_tol = b->feas_tol;
  out.seed = b->seed;
  out.threads = b->threads == 0 ? default_thread_count() : b->threads;
  return out;
}

pgmrate_problem* make_handle(ProblemDocument doc) {
  CompositeProblem prob = make_problem(doc);
  return new pgmrate_problem{std::move(doc), std::move(prob)};
}

std::vector<double> to_vector(const double* data, std::size_t count) {
  if (count > 0) require(data, "gammas");
  return std::vector<double>(data, data + count);
}

}  // namespace

extern "C" {

const char* pgmrate_last_error(void) { return g_last_error.c_str(); }

const char* pgmrate_version(void) { return "1.0.0"; }

int pgmrate_parse_fn_class(const char* name, int* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = parse_fn_class(name) == FnClass::convex ? PGMRATE_CONVEX : PGMRATE_NONCONVEX;
  });
}

int pgmrate_parse_inequality(const char* name, int* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = parse_inequality(name) == Inequality::pl ? PGMRATE_PL : PGMRATE_RPL;
  });
}

int pgmrate_rate(int fn_class, int ineq, double L, double mu, double gamma, double* rho,
                 char* branch, size_t branch_cap) {
  return guarded([&] {
    require(rho, "rho");
    const RateResult r = rate({to_fn_class(fn_class), to_inequality(ineq), L, mu, gamma});
    copy_out(r.branch, branch, branch_cap);
    *rho = r.rho;
  });
}

int pgmrate_optimal_step(int fn_class, int ineq, double L, double mu, double* gamma,
                         double* rho, char* branch, size_t branch_cap) {
  return guarded([&] {
    require(gamma, "gamma");
    const OptimalStep s = optimal_step(to_fn_class(fn_class), to_inequality(ineq), L, mu);
    copy_out(s.branch, branch, branch_cap);
    *gamma = s.gamma;
    if (rho) *rho = s.rho;
  });
}

int pgmrate_baseline_garrigos(double L, double mu, double gamma, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = baseline_garrigos(L, mu, gamma);
  });
}

int pgmrate_baseline_zhang(double L, double mu, double gamma, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = baseline_zhang(L, mu, gamma);
  });
}

int pgmrate_rate_curve_csv(int fn_class, int ineq, double L, double mu, const double* gammas,
                           size_t count, const char* path) {
  return guarded([&] {
    require(path, "path");
    const auto rows = rate_curve(to_fn_class(fn_class), to_inequality(ineq), L, mu,
                                 to_vector(gammas, count));
    write_rate_curve_csv(rows, std::filesystem::path(path));
  });
}

size_t pgmrate_certificate_count(void) { return certificate_catalog().size(); }

int pgmrate_certificate_name(size_t index, char* buf, size_t cap) {
  return guarded([&] {
    require(buf, "buf");
    if (index >= certificate_catalog().size()) throw UsageError("certificate index out of range");
    copy_out(certificate_catalog()[index].name, buf, cap);
  });
}

int pgmrate_certify(const char* case_name, double L, double mu, int grid, int exact,
                    unsigned threads, const char* report_path, int* cases_passed) {
  bool any_failed = false;
  const int rc = guarded([&] {
    require(case_name, "case_name");
    require(report_path, "report_path");
    std::vector<CaseId> ids;
    if (std::string(case_name) == "all") {
      for (const auto& c : certificate_catalog()) ids.push_back(c.id);
    } else {
      ids.push_back(parse_case(case_name));
    }
    const auto outcomes = certify_cases(ids, L, mu, grid, exact != 0, {},
                                        threads == 0 ? default_thread_count() : threads);
    int passed = 0;
    for (const auto& o : outcomes) passed += o.passed ? 1 : 0;
    if (cases_passed) *cases_passed = passed;
    const std::string report = certification_report_json(outcomes);
    std::ofstream out(report_path);
    if (!out) throw IoError(std::string("cannot open '") + report_path + "' for writing");
    out << report << '\n';
    if (!out) throw IoError(std::string("write failed for '") + report_path + "'");
    any_failed = passed != static_cast<int>(outcomes.size());
    if (any_failed) {
      for (const auto& o : outcomes) {
        if (!o.passed) {
          g_last_error = o.failure;
          break;
        }
      }
    }
  });
  if (rc != PGMRATE_OK) return rc;
  return any_failed ? PGMRATE_E_VERIFICATION : PGMRATE_OK;
}

void pgmrate_search_budget_default(pgmrate_search_budget* budget) {
  if (budget == nullptr) return;
  const SearchBudget d;
  budget->restarts = d.restarts;
  budget->max_outer = d.max_outer;
  budget->max_inner = d.max_inner;
  budget->feas_tol = d.feas_tol;
  budget->seed = d.seed;
  budget->threads = d.threads;
}

int pgmrate_pep_search(int fn_class, int ineq, double L, double mu, double gamma,
                       const pgmrate_search_budget* budget, double* best_ratio,
                       double* analytic_rate, int* sound) {
  return guarded([&] {
    require(best_ratio, "best_ratio");
    const SearchResult r = search_worst_case(
        {to_fn_class(fn_class), to_inequality(ineq), L, mu, gamma}, to_budget(budget));
    *best_ratio = r.best_ratio;
    if (analytic_rate) *analytic_rate = r.analytic_rate;
    if (sound) *sound = r.sound ? 1 : 0;
  });
}

int pgmrate_tightness_csv(int fn_class, int ineq, double L, double mu, const double* gammas,
                          size_t count, const pgmrate_search_budget* budget, const char* path,
                          double* max_gap, int* all_sound) {
  bool unsound = false;
  const int rc = guarded([&] {
    require(path, "path");
    const auto rows = tightness_curve(to_fn_class(fn_class), to_inequality(ineq), L, mu,
                                      to_vector(gammas, count), to_budget(budget));
    write_tightness_csv(rows, std::filesystem::path(path));
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      worst = std::max(worst, r.gap);
      if (!r.sound) {
        if (!unsound) {
          g_last_error = "searched ratio exceeds the analytic rate at gamma=" +
                         format_double(r.gamma);
        }
        unsound = true;
      }
    }
    if (max_gap) *max_gap = rows.empty() ? kNaN : worst;
    if (all_sound) *all_sound = unsound ? 0 : 1;
  });
  if (rc != PGMRATE_OK) return rc;
  return unsound ? PGMRATE_E_VERIFICATION : PGMRATE_OK;
}

void pgmrate_problem_spec_default(pgmrate_problem_spec* spec) {
  if (spec == nullptr) return;
  spec->kind = "lasso";
  spec->n = 200;
  spec->d = 20;
  spec->lambda = 0.1;
  spec->delta = kNaN;
  spec->seed = 1;
  spec->split = "smooth";
  spec->spectrum_min = kNaN;
  spec->spectrum_max = kNaN;
}

int pgmrate_problem_generate(const pgmrate_problem_spec* spec, pgmrate_problem** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    require(spec->kind, "spec->kind");
    *out = nullptr;
    const ProblemKind kind = parse_problem_kind(spec->kind);
    const ElasticSplit split =
        spec->split ? parse_elastic_split(spec->split) : ElasticSplit::smooth;
    if (spec->n < 1 || spec->d < 1) throw DomainError("n and d must be positive");
    if (!(spec->lambda > 0.0) || !std::isfinite(spec->lambda)) {
      throw DomainError("lambda must be positive");
    }
    std::optional<double> delta;
    if (!std::isnan(spec->delta)) {
      if (!(spec->delta > 0.0) || !std::isfinite(spec->delta)) {
        throw DomainError("delta must be positive");
      }
      delta = spec->delta;
    }
    if ((kind == ProblemKind::elastic_net) != delta.has_value()) {
      throw DomainError("delta must be given exactly for the elastic net");
    }
    std::optional<SpectrumTarget> spectrum;
    if (!std::isnan(spec->spectrum_min) || !std::isnan(spec->spectrum_max)) {
      if (!(spec->spectrum_min >= 0.0) || !(spec->spectrum_max > spec->spectrum_min) ||
          !std::isfinite(spec->spectrum_max)) {
        throw DomainError("spectrum must satisfy 0 <= min < max");
      }
      spectrum = SpectrumTarget{spec->spectrum_min, spec->spectrum_max};
    }
    ProblemDocument doc = generate_problem(kind, spec->n, spec->d, spec->lambda, delta,
                                           spec->seed, spectrum, split);
    *out = make_handle(std::move(doc));
  });
}

int pgmrate_problem_load(const char* path, pgmrate_problem** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = make_handle(load_problem(path));
  });
}

int pgmrate_problem_save(const pgmrate_problem* problem, const char* path) {
  return guarded([&] {
    require(problem, "problem");
    require(path, "path");
    save_problem(problem->doc, path);
  });
}

int pgmrate_problem_info(const pgmrate_problem* problem, double* L, double* mu, int* dim) {
  return guarded([&] {
    require(problem, "problem");
    if (L) *L = problem->problem.f.lipschitz();
    if (mu) *mu = problem->problem.mu ? problem->problem.mu->value : kNaN;
    if (dim) *dim = static_cast<int>(problem->problem.dim());
  });
}

void pgmrate_problem_free(pgmrate_problem* problem) { delete problem; }

int pgmrate_solve(const pgmrate_problem* problem, const char* step, int max_iters,
                  double stop_tol, int with_fstar, pgmrate_trace** out) {
  return guarded([&] {
    require(problem, "problem");
    require(step, "step");
    require(out, "out");
    *out = nullptr;
    const CompositeProblem& prob = problem->problem;
    PgmConfig cfg;
    cfg.step = resolve_step(parse_step_policy(step), prob).gamma;
    cfg.max_iters = max_iters;
    cfg.stop_tol = stop_tol;
    cfg.record_subgradients = false;
    auto t = std::make_unique<pgmrate_trace>();
    t->trace = run_pgm(prob, cfg, Vector::Zero(prob.dim()));
    if (with_fstar) {
      PgmConfig ref = cfg;
      ref.max_iters = std::max(max_iters, 1'000'000);
      ref.stop_tol = std::min(stop_tol, 1e-13);
      const FstarEstimate est = estimate_fstar(prob, ref, Vector::Zero(prob.dim()));
      double fstar = est.value;
      for (const auto& rec : t->trace.iterates) fstar = std::min(fstar, rec.objective);
      attach_optimal_value(t->trace, fstar);
    }
    *out = t.release();
  });
}

int pgmrate_trace_info(const pgmrate_trace* trace, double* gamma, int* iterations,
                       int* converged, int* monotone, double* final_objective,
                       double* final_residual) {
  return guarded([&] {
    require(trace, "trace");
    const Trace& t = trace->trace;
    if (gamma) *gamma = t.step;
    if (iterations) *iterations = t.iterations;
    if (converged) *converged = t.converged ? 1 : 0;
    if (monotone) *monotone = t.monotone ? 1 : 0;
    if (final_objective) *final_objective = t.iterates.back().objective;
    if (final_residual) *final_residual = t.iterates.back().residual_norm;
  });
}

int pgmrate_trace_write_csv(const pgmrate_trace* trace, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    write_trace_csv(trace->trace, std::filesystem::path(path));
  });
}

void pgmrate_trace_free(pgmrate_trace* trace) { delete trace; }

void pgmrate_experiment_spec_default(pgmrate_experiment_spec* spec) {
  if (spec == nullptr) return;
  const ExperimentSpec d;
  spec->policies = nullptr;
  spec->policy_count = 0;
  spec->max_iters = d.max_iters;
  spec->stop_tol = d.stop_tol;
  spec->gap_tol = d.gap_tol;
  spec->threads = d.threads;
}

int pgmrate_experiment_run(const pgmrate_problem* problem, const pgmrate_experiment_spec* spec,
                           pgmrate_experiment** out) {
  return guarded([&] {
    require(problem, "problem");
    require(spec, "spec");
    require(out, "out");
    *out = nullptr;
    ExperimentSpec s;
    if (spec->policy_count > 0) require(spec->policies, "spec->policies");
    for (std::size_t i = 0; i < spec->policy_count; ++i) {
      require(spec->policies[i], "policy");
      s.policies.push_back(parse_step_policy(spec->policies[i]));
    }
    s.max_iters = spec->max_iters;
    s.stop_tol = spec->stop_tol;
    s.gap_tol = spec->gap_tol;
    s.threads = spec->threads == 0 ? default_thread_count() : spec->threads;
    auto e = std::make_unique<pgmrate_experiment>();
    e->result = run_experiment(problem->doc, s);
    *out = e.release();
  });
}

int pgmrate_experiment_info(const pgmrate_experiment* exp, double* L, double* mu, double* fstar,
                            size_t* policy_count) {
  return guarded([&] {
    require(exp, "experiment");
    const ExperimentResult& r = exp->result;
    if (L) *L = r.L;
    if (mu) *mu = r.mu ? *r.mu : kNaN;
    if (fstar) *fstar = r.fstar;
    if (policy_count) *policy_count = r.policies.size();
  });
}

int pgmrate_experiment_policy(const pgmrate_experiment* exp, size_t index,
                              pgmrate_policy_summary* out) {
  return guarded([&] {
    require(exp, "experiment");
    require(out, "out");
    if (index >= exp->result.policies.size()) throw UsageError("policy index out of range");
    const PolicyResult& p = exp->result.policies[index];
    out->gamma = p.gamma;
    out->iterations_to_tol = p.iterations_to_tol ? *p.iterations_to_tol : -1;
    out->max_contraction = p.contraction.max_factor;
    out->tail_geometric_mean = p.contraction.tail_geometric_mean;
    out->analytic_bound = p.analytic_bound ? *p.analytic_bound : kNaN;
    out->converged = p.trace.converged ? 1 : 0;
  });
}

int pgmrate_experiment_policy_label(const pgmrate_experiment* exp, size_t index, char* buf,
                                    size_t cap) {
  return guarded([&] {
    require(exp, "experiment");
    require(buf, "buf");
    if (index >= exp->result.policies.size()) throw UsageError("policy index out of range");
    copy_out(exp->result.policies[index].policy.label(), buf, cap);
  });
}

int pgmrate_experiment_write_summary(const pgmrate_experiment* exp, const char* path) {
  return guarded([&] {
    require(exp, "experiment");
    require(path, "path");
    write_summary_csv(exp->result, std::filesystem::path(path));
  });
}

int pgmrate_experiment_write_trace(const pgmrate_experiment* exp, size_t index,
                                   const char* path) {
  return guarded([&] {
    require(exp, "experiment");
    require(path, "path");
    if (index >= exp->result.policies.size()) throw UsageError("policy index out of range");
    write_trace_csv(exp->result.policies[index].trace, std::filesystem::path(path));
  });
}

void pgmrate_experiment_free(pgmrate_experiment* exp) { delete exp; }

}  // extern "C"
