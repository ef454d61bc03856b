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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "experiments.hpp"
#include "pgm.hpp"
#include "rates.hpp"

using namespace pgmrate;

namespace {

ExperimentSpec elastic_spec(double delta, std::uint64_t seed) {
  ExperimentSpec s;
  s.kind = ProblemKind::elastic_net;
  s.delta = delta;
  s.seed = seed;
  s.policies = {parse_step_policy("1/L"), parse_step_policy("optimal"),
                parse_step_policy("1.9/L")};
  return s;
}

}  // namespace

TEST_CASE("step policy labels round-trip") {
  for (const char* s : {"1/L", "1.9/L", "1.5/L", "sqrt3/L", "0.01", "optimal", "rpl-interior"}) {
    CHECK(parse_step_policy(s).label() == s);
  }
  CHECK(parse_step_policy("sqrt3/L").value == std::sqrt(3.0));
  CHECK(parse_step_policy("0.25/L").kind == PolicyKind::scaled);
  CHECK(parse_step_policy("0.25").kind == PolicyKind::absolute);
  for (const char* bad : {"", "/L", "abc", "-1/L", "0", "0/L", "nan", "inf/L", "1/Lx", "1 /L"}) {
    CHECK_THROWS_AS(parse_step_policy(bad), UsageError);
  }
}

TEST_CASE("optimal policy resolves per instance class") {
  const CompositeProblem lasso =
      make_problem(generate_problem(ProblemKind::lasso, 40, 5, 0.1, {}, 1));
  const CompositeProblem srlr =
      make_problem(generate_problem(ProblemKind::srlr, 40, 5, 0.1, {}, 1));
  const CompositeProblem en =
      make_problem(generate_problem(ProblemKind::elastic_net, 40, 5, 0.1, 100.0, 1));
  const StepPolicy opt = parse_step_policy("optimal");
  CHECK(resolve_step(opt, lasso).gamma == doctest::Approx(1.5 / lasso.f.lipschitz()));
  CHECK(resolve_step(opt, srlr).gamma == doctest::Approx(std::sqrt(3.0) / srlr.f.lipschitz()));
  const ResolvedStep r = resolve_step(opt, en);
  const OptimalStep ref =
      optimal_step(FnClass::convex, Inequality::rpl, en.f.lipschitz(), en.mu->value);
  CHECK(r.gamma == ref.gamma);
  CHECK(r.branch == ref.branch);
  CHECK(resolve_step(parse_step_policy("rpl-interior"), en).gamma ==
        rpl_interior_step(en.f.lipschitz(), en.mu->value));
  CHECK_THROWS_AS(resolve_step(parse_step_policy("rpl-interior"), lasso), DomainError);
  CHECK(resolve_step(parse_step_policy("0.001"), lasso).gamma == 0.001);
}

TEST_CASE("empirical contraction edge cases") {
  Trace empty;
  CHECK_THROWS_AS(empirical_contraction(empty, 0.0), DomainError);

  Trace flat;
  for (int i = 0; i < 5; ++i) {
    IterateRecord r;
    r.objective = 3.0;
    flat.iterates.push_back(r);
  }
  const ContractionSummary s = empirical_contraction(flat, 3.0);
  CHECK(s.factors.empty());
  CHECK(std::isnan(s.max_factor));

  Trace geometric;
  for (int i = 0; i < 9; ++i) {
    IterateRecord r;
    r.objective = 1.0 + std::pow(0.5, i);
    geometric.iterates.push_back(r);
  }
  const ContractionSummary g = empirical_contraction(geometric, 1.0);
  CHECK(g.factors.size() == 8);
  CHECK(g.max_factor == doctest::Approx(0.5));
  CHECK(g.tail_geometric_mean == doctest::Approx(0.5));
}

TEST_CASE("single-variable instance: every policy reaches the same optimum") {
  for (ProblemKind kind : {ProblemKind::srlr, ProblemKind::lasso, ProblemKind::elastic_net}) {
    ExperimentSpec s;
    s.kind = kind;
    s.n = 1;
    s.d = 1;
    if (kind == ProblemKind::elastic_net) s.delta = 0.5;
    s.policies = {parse_step_policy("1/L"), parse_step_policy("optimal"),
                  parse_step_policy("1.9/L"), parse_step_policy("0.5/L")};
    if (kind == ProblemKind::elastic_net) {
      // One variable makes mu equal L.
      CHECK_THROWS_AS(run_experiment(s), DomainError);
      s.policies.erase(s.policies.begin() + 1);
    }
    const ExperimentResult r = run_experiment(s);
    for (const auto& p : r.policies) {
      CHECK(std::abs(p.trace.iterates.back().objective - r.fstar) <= 1e-10);
    }
  }
}

TEST_CASE("experiment validates its spec") {
  ExperimentSpec s = elastic_spec(100.0, 1);
  s.policies = {parse_step_policy("2.5/L")};
  CHECK_THROWS_AS(run_experiment(s), DomainError);
  s = elastic_spec(100.0, 1);
  s.delta.reset();
  CHECK_THROWS_AS(run_experiment(s), DomainError);
  s = elastic_spec(100.0, 1);
  s.kind = ProblemKind::lasso;
  CHECK_THROWS_AS(run_experiment(s), DomainError);
  s = elastic_spec(100.0, 1);
  s.policies.clear();
  CHECK_THROWS_AS(run_experiment(s), DomainError);
  s = elastic_spec(100.0, 1);
  s.n = 0;
  CHECK_THROWS_AS(run_experiment(s), DomainError);
}

TEST_CASE("elastic net: bound compliance and optimal step beats 1/L") {
  for (double delta : {0.01, 100.0}) {
    ExperimentSpec s = elastic_spec(delta, 2);
    s.threads = 4;
    const ExperimentResult r = run_experiment(s);
    REQUIRE(r.mu.has_value());
    REQUIRE(r.policies.size() == 3);
    for (const auto& p : r.policies) {
      REQUIRE(p.analytic_bound.has_value());
      CHECK_FALSE(p.contraction.factors.empty());
      for (double f : p.contraction.factors) CHECK(f <= *p.analytic_bound + 1e-9);
      CHECK(p.iterations_to_tol.has_value());
    }
    CHECK(*r.policies[1].iterations_to_tol <= *r.policies[0].iterations_to_tol);
    CHECK_FALSE(r.policies[1].branch.empty());
  }
}

TEST_CASE("experiments are deterministic across thread counts") {
  ExperimentSpec s = elastic_spec(0.01, 3);
  s.threads = 1;
  const ExperimentResult a = run_experiment(s);
  s.threads = 4;
  const ExperimentResult b = run_experiment(s);
  std::ostringstream sa, sb;
  write_summary_csv(a, sa);
  write_summary_csv(b, sb);
  CHECK(sa.str() == sb.str());
  CHECK(a.fstar == b.fstar);
}

TEST_CASE("summary CSV leaves the bound blank without mu") {
  ExperimentSpec s;
  s.kind = ProblemKind::lasso;
  s.policies = {parse_step_policy("1/L"), parse_step_policy("optimal")};
  const ExperimentResult r = run_experiment(s);
  CHECK_FALSE(r.mu.has_value());
  std::ostringstream os;
  write_summary_csv(r, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "policy,gamma,iterations_to_tol,max_contraction,analytic_bound");
  while (std::getline(in, line)) CHECK(line.back() == ',');
  CHECK(r.fstar_estimated);
  CHECK_FALSE(r.reference_stale);
}

TEST_CASE("LASSO and SRLR runs reach a linear phase") {
  for (ProblemKind kind : {ProblemKind::srlr, ProblemKind::lasso}) {
    ExperimentSpec s;
    s.kind = kind;
    s.seed = 4;
    s.policies = {parse_step_policy("1/L"), parse_step_policy("1.5/L"),
                  parse_step_policy("sqrt3/L")};
    const ExperimentResult r = run_experiment(s);
    for (const auto& p : r.policies) {
      CHECK(p.contraction.tail_geometric_mean < 1.0);
      CHECK(p.iterations_to_tol.has_value());
    }
  }
}

TEST_CASE("supplied optimal value replaces the reference run") {
  ExperimentSpec s = elastic_spec(100.0, 5);
  const ExperimentResult est = run_experiment(s);
  s.fstar = est.fstar;
  const ExperimentResult given = run_experiment(s);
  CHECK_FALSE(given.fstar_estimated);
  CHECK(given.fstar == est.fstar);
  CHECK(given.reference_iterations == 0);
}

TEST_CASE("prox split with mu = lambda_min + delta can beat the convex RPL bound") {
  ProblemDocument doc;
  doc.kind = ProblemKind::elastic_net;
  doc.a = Matrix{{std::sqrt(10.0), 0.0}};
  doc.b = Vector::Zero(1);
  doc.lambda = 1e-9;
  doc.delta = 5.0;
  Vector x1(2);
  x1 << 0.0, 1.0;

  const auto one_step_ratio = [&](ElasticSplit split) {
    doc.split = split;
    const CompositeProblem p = make_problem(doc);
    PgmConfig cfg;
    cfg.step = 1.0 / p.f.lipschitz();
    cfg.max_iters = 1;
    const Trace t = run_pgm(p, cfg, x1);
    const double bound =
        rate({FnClass::convex, Inequality::rpl, p.f.lipschitz(), p.mu->value, cfg.step}).rho;
    return std::pair{t.iterates[1].objective / t.iterates[0].objective, bound};
  };

  const auto [prox_ratio, prox_bound] = one_step_ratio(ElasticSplit::prox);
  CHECK(prox_bound == doctest::Approx(1.0 / 3.0));
  CHECK(prox_ratio == doctest::Approx(1.0 / 2.25).epsilon(1e-6));
  CHECK(prox_ratio > prox_bound + 0.1);

  const auto [smooth_ratio, smooth_bound] = one_step_ratio(ElasticSplit::smooth);
  CHECK(smooth_ratio == doctest::Approx(4.0 / 9.0).epsilon(1e-6));
  CHECK(smooth_ratio <= smooth_bound + 1e-9);
}
