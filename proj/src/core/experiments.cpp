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

#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "error.hpp"
#include "rates.hpp"

namespace pgmrate {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool parse_positive(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out) && out > 0.0;
}

}  // namespace

ResolvedStep resolve_step(const StepPolicy& p, const CompositeProblem& prob) {
  const double L = prob.f.lipschitz();
  const std::optional<double> mu =
      prob.mu ? std::optional<double>(prob.mu->value) : std::nullopt;
  switch (p.kind) {
    case PolicyKind::scaled: return {p.value / L, {}};
    case PolicyKind::absolute: return {p.value, {}};
    case PolicyKind::rpl_interior:
      if (!mu) throw DomainError("policy rpl-interior needs a known mu");
      return {rpl_interior_step(L, *mu), {}};
    case PolicyKind::optimal: {
      const FnClass fc = prob.f.fn_class();
      if (mu) {
        const OptimalStep s = optimal_step(fc, prob.mu->ineq, L, *mu);
        return {s.gamma, s.branch};
      }
      const OptimalStep s = optimal_step(fc, Inequality::pl, L, L);
      return {s.gamma, s.branch};
    }
  }
  throw DomainError("unknown step policy");
}

namespace {

// Largest deviation of F from `fstar` over the last five iterates of the
// reference run; once converged this is the evaluation noise of F.
double reference_noise(const Trace& ref, double fstar) {
  const std::size_t n = ref.iterates.size();
  const std::size_t tail = std::min<std::size_t>(n, 5);
  double spread = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) {
    spread = std::max(spread, std::abs(ref.iterates[i].objective - fstar));
  }
  return spread;
}

// Shortest decimal that round-trips.
std::string short_number(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string StepPolicy::label() const {
  switch (kind) {
    case PolicyKind::scaled:
      if (value == std::sqrt(3.0)) return "sqrt3/L";
      return short_number(value) + "/L";
    case PolicyKind::absolute: return short_number(value);
    case PolicyKind::optimal: return "optimal";
    case PolicyKind::rpl_interior: return "rpl-interior";
  }
  return "?";
}

StepPolicy parse_step_policy(std::string_view s) {
  if (s == "optimal") return {PolicyKind::optimal, 0.0};
  if (s == "rpl-interior") return {PolicyKind::rpl_interior, 0.0};
  if (s == "sqrt3/L") return {PolicyKind::scaled, std::sqrt(3.0)};
  double v = 0.0;
  if (s.size() > 2 && s.substr(s.size() - 2) == "/L") {
    if (parse_positive(s.substr(0, s.size() - 2), v)) return {PolicyKind::scaled, v};
  } else if (parse_positive(s, v)) {
    return {PolicyKind::absolute, v};
  }
  throw UsageError("invalid step policy '" + std::string(s) +
                   "' (expected c/L, sqrt3/L, a positive step, optimal or rpl-interior)");
}

ContractionSummary empirical_contraction(const Trace& trace, double fstar,
                                         double extra_uncertainty) {
  if (trace.iterates.empty()) throw DomainError("empty trace");
  ContractionSummary s;
  const double floor = significance_floor(fstar, extra_uncertainty);
  for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
    const double gap = trace.iterates[i].objective - fstar;
    if (gap > floor) s.factors.push_back((trace.iterates[i + 1].objective - fstar) / gap);
  }
  if (s.factors.empty()) {
    s.max_factor = kNaN;
    s.tail_geometric_mean = kNaN;
    return s;
  }
  s.max_factor = *std::max_element(s.factors.begin(), s.factors.end());
  const std::size_t tail = std::max<std::size_t>(1, s.factors.size() / 4);
  double log_sum = 0.0;
  for (std::size_t i = s.factors.size() - tail; i < s.factors.size(); ++i) {
    log_sum += std::log(std::max(s.factors[i], std::numeric_limits<double>::min()));
  }
  s.tail_geometric_mean = std::exp(log_sum / static_cast<double>(tail));
  return s;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw DomainError("n and d must be positive");
  if (!(spec.lambda > 0.0)) throw DomainError("lambda must be positive");
  const bool en = spec.kind == ProblemKind::elastic_net;
  if (en != spec.delta.has_value()) {
    throw DomainError("delta must be given exactly for the elastic net");
  }
  if (spec.delta && !(*spec.delta > 0.0)) throw DomainError("delta must be positive");
  const ProblemDocument doc = generate_problem(spec.kind, spec.n, spec.d, spec.lambda,
                                               spec.delta, spec.seed, spec.spectrum, spec.split);
  return run_experiment(doc, spec);
}

ExperimentResult run_experiment(const ProblemDocument& doc, const ExperimentSpec& spec) {
  if (spec.policies.empty()) throw DomainError("no step policies given");
  if (!(spec.gap_tol > 0.0)) throw DomainError("gap tolerance must be positive");
  const CompositeProblem prob = make_problem(doc);
  ExperimentResult res;
  res.doc = doc;
  res.L = prob.f.lipschitz();
  if (prob.mu) res.mu = prob.mu->value;

  std::vector<ResolvedStep> steps;
  for (const auto& p : spec.policies) {
    ResolvedStep s = resolve_step(p, prob);
    if (!(s.gamma > 0.0 && s.gamma < 2.0 / res.L)) {
      throw DomainError("gamma out of (0, 2/L) for policy " + p.label() + " (gamma=" +
                        format_double(s.gamma) + ", L=" + format_double(res.L) + ")");
    }
    steps.push_back(std::move(s));
  }

  const Vector x1 = Vector::Zero(prob.dim());
  PgmConfig run_cfg;
  run_cfg.max_iters = spec.max_iters;
  run_cfg.stop_tol = spec.stop_tol;
  run_cfg.record_subgradients = spec.record_subgradients;

  std::vector<PolicyResult> results(spec.policies.size());
  Trace reference;
  const std::size_t jobs = results.size() + (spec.fstar ? 0 : 1);
  parallel_for(jobs, std::max(1u, spec.threads), [&](std::size_t k) {
    if (k == results.size()) {
      PgmConfig ref_cfg;
      ref_cfg.step = 1.0 / res.L;
      ref_cfg.max_iters = spec.reference_max_iters;
      ref_cfg.stop_tol = spec.reference_stop_tol;
      ref_cfg.record_subgradients = false;
      reference = run_pgm(prob, ref_cfg, x1);
      return;
    }
    PgmConfig cfg = run_cfg;
    cfg.step = steps[k].gamma;
    results[k].policy = spec.policies[k];
    results[k].gamma = steps[k].gamma;
    results[k].branch = steps[k].branch;
    results[k].trace = run_pgm(prob, cfg, x1);
  });

  if (spec.fstar) {
    res.fstar = *spec.fstar;
    res.fstar_estimated = false;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& rec : reference.iterates) best = std::min(best, rec.objective);
    for (const auto& r : results)
      for (const auto& rec : r.trace.iterates) best = std::min(best, rec.objective);
    res.fstar = best;
    res.reference_stale = !reference.converged;
    res.reference_iterations = reference.iterations;
    res.fstar_uncertainty = reference_noise(reference, best);
  }

  for (auto& r : results) {
    attach_optimal_value(r.trace, res.fstar, res.fstar_uncertainty);
    r.contraction = empirical_contraction(r.trace, res.fstar, res.fstar_uncertainty);
    const auto& its = r.trace.iterates;
    for (std::size_t i = 0; i < its.size(); ++i) {
      if (its[i].objective - res.fstar <= spec.gap_tol) {
        r.iterations_to_tol = static_cast<int>(i);
        break;
      }
    }
    if (res.mu && *res.mu <= res.L) {
      r.analytic_bound = rate({FnClass::convex, Inequality::rpl, res.L, *res.mu, r.gamma}).rho;
    }
  }
  res.policies = std::move(results);
  return res;
}

void write_summary_csv(const ExperimentResult& result, std::ostream& out) {
  out << "policy,gamma,iterations_to_tol,max_contraction,analytic_bound\n";
  for (const auto& r : result.policies) {
    out << r.policy.label() << ',' << format_double(r.gamma) << ',';
    if (r.iterations_to_tol) out << *r.iterations_to_tol;
    out << ',';
    if (!std::isnan(r.contraction.max_factor)) out << format_double(r.contraction.max_factor);
    out << ',';
    if (r.analytic_bound) out << format_double(*r.analytic_bound);
    out << '\n';
  }
}

void write_summary_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_summary_csv(result, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pgmrate
