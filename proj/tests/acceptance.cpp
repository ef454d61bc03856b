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

// Usage: acceptance [criterion...]   (default: 1..8)
// Prints one PASS/FAIL line per criterion; exits nonzero if any failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "interp.hpp"
#include "pepsearch.hpp"
#include "pgm.hpp"
#include "problem.hpp"
#include "rates.hpp"

using namespace pgmrate;

namespace {

constexpr double kMultiplierTol = 1e-14;
constexpr double kIdentityTol = 1e-11;
constexpr double kEigenTol = 1e-10;
constexpr double kRegressionTol = 1e-15;
constexpr double kContinuityTol = 1e-12;
constexpr double kClosedFormTol = 1e-13;
constexpr double kTightnessTol = 5e-3;
constexpr double kBoundSlack = 1e-9;
constexpr double kCalibrationRelTol = 0.02;
constexpr double kFdTol = 1e-5;

constexpr int kParameterDraws = 100;
constexpr int kCertificateGrid = 500;
constexpr int kDominanceGrid = 1000;
constexpr int kCoincidenceGrid = 50;
constexpr int kTightnessGrid = 25;
constexpr int kSeeds = 10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct LMu {
  double L, mu;
};

// L log-uniform on [0.1, 10], mu/L uniform on [0.001, 0.999].
std::vector<LMu> parameter_draws(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> logl(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> ratio(0.001, 0.999);
  std::vector<LMu> out;
  for (int k = 0; k < kParameterDraws; ++k) {
    const double L = std::exp(logl(gen));
    out.push_back({L, L * ratio(gen)});
  }
  return out;
}

Outcome certificates() {
  VerifyOptions opts;
  opts.multiplier_tol = kMultiplierTol;
  opts.identity_tol = kIdentityTol;
  opts.eigen_tol = kEigenTol;
  double min_mult = std::numeric_limits<double>::infinity();
  double worst_identity = 0.0, max_eig = -std::numeric_limits<double>::infinity();
  long points = 0;
  for (const LMu& p : parameter_draws(101)) {
    for (const CaseInfo& c : certificate_catalog()) {
      try {
        const SweepSummary s =
            sweep_verify(c.id, p.L, p.mu, case_grid(c.id, p.L, kCertificateGrid), opts);
        points += static_cast<long>(s.points);
        min_mult = std::min(min_mult, s.min_multiplier);
        worst_identity = std::max(worst_identity, s.worst_identity_residual);
        max_eig = std::max(max_eig, s.max_remainder_eigenvalue);
      } catch (const Error& e) {
        return {false, fmt("%s at L=%.17g mu=%.17g: %s", c.name.c_str(), p.L, p.mu,
                           e.what())};
      }
    }
  }
  return {true, fmt("%ld points; min multiplier %.3g, worst identity residual %.3g, "
                    "max remainder eigenvalue %.3g",
                    points, min_mult, worst_identity, max_eig)};
}

Outcome regressions() {
  struct Row {
    const char* what;
    double got, want;
  };
  const Row rows[] = {
      {"rate convex/pl", rate({FnClass::convex, Inequality::pl, 1.0, 0.1, 1.0}).rho, 1.0 / 1.2},
      {"rate nonconvex/rpl", rate({FnClass::nonconvex, Inequality::rpl, 1.0, 0.1, 1.0}).rho, 0.9},
      {"optimal step nonconvex/pl",
       optimal_step(FnClass::nonconvex, Inequality::pl, 1.0, 0.1).gamma, std::sqrt(3.0)},
      {"optimal step convex/rpl", optimal_step(FnClass::convex, Inequality::rpl, 1.0, 0.25).gamma,
       4.0 / 3.0},
  };
  double worst = 0.0;
  std::string bad;
  for (const Row& r : rows) {
    const double err = std::abs(r.got - r.want);
    worst = std::max(worst, err);
    if (!(err <= kRegressionTol)) bad += fmt(" %s=%.17g", r.what, r.got);
  }
  if (!bad.empty()) return {false, "off by more than 1e-15:" + bad};
  return {true, fmt("4 values, worst error %.3g", worst)};
}

Outcome dominance_continuity() {
  long nonstrict = 0, violations = 0, points = 0;
  double worst_cont = 0.0, worst_closed = 0.0;
  struct Boundary {
    FnClass fc;
    Inequality ineq;
    double scaled;
  };
  const Boundary boundaries[] = {{FnClass::nonconvex, Inequality::pl, std::sqrt(3.0)},
                                 {FnClass::convex, Inequality::pl, 1.5},
                                 {FnClass::convex, Inequality::rpl, 1.0},
                                 {FnClass::convex, Inequality::rpl, 1.5}};
  for (const LMu& p : parameter_draws(303)) {
    for (double g : open_grid(0.0, 2.0 / p.L, kDominanceGrid)) {
      const double r = rate({FnClass::convex, Inequality::pl, p.L, p.mu, g}).rho;
      const double b = baseline_garrigos(p.L, p.mu, g);
      ++points;
      if (r > b) ++violations;
      else if (!(r < b)) ++nonstrict;
    }
    for (const Boundary& bd : boundaries) {
      const double g = bd.scaled / p.L;
      const RateResult at = rate({bd.fc, bd.ineq, p.L, p.mu, g});
      const RateResult above =
          rate({bd.fc, bd.ineq, p.L, p.mu, std::nextafter(g, 2.0 / p.L)});
      const RateResult below = rate({bd.fc, bd.ineq, p.L, p.mu, std::nextafter(g, 0.0)});
      worst_cont = std::max({worst_cont, std::abs(at.rho - above.rho),
                             std::abs(at.rho - below.rho)});
    }
    const double at15 = rate({FnClass::convex, Inequality::pl, p.L, p.mu, 1.5 / p.L}).rho;
    worst_closed = std::max(worst_closed, std::abs(at15 - p.L / (p.L + 3.0 * p.mu)));
  }
  const bool pass = violations == 0 && worst_cont <= kContinuityTol &&
                    worst_closed <= kClosedFormTol;
  return {pass, fmt("%ld points, %ld above baseline, %ld ties; continuity residual %.3g; "
                    "L/(L+3mu) error %.3g",
                    points, violations, nonstrict, worst_cont, worst_closed)};
}

Outcome coincidence() {
  double worst_zhang = 0.0, worst_long = 0.0;
  for (const LMu& p : parameter_draws(404)) {
    std::vector<double> short_steps = open_grid(0.0, 1.0 / p.L, kCoincidenceGrid - 1);
    short_steps.push_back(1.0 / p.L);
    for (double g : short_steps) {
      const double r = rate({FnClass::convex, Inequality::rpl, p.L, p.mu, g}).rho;
      worst_zhang = std::max(worst_zhang, std::abs(r - baseline_zhang(p.L, p.mu, g)));
    }
    for (double g : open_grid(1.5 / p.L, 2.0 / p.L, kCoincidenceGrid)) {
      const double a = rate({FnClass::convex, Inequality::pl, p.L, p.mu, g}).rho;
      const double b = rate({FnClass::convex, Inequality::rpl, p.L, p.mu, g}).rho;
      worst_long = std::max(worst_long, std::abs(a - b));
    }
  }
  return {worst_zhang <= kClosedFormTol && worst_long <= kClosedFormTol,
          fmt("convex/rpl vs short-step baseline %.3g; convex pl vs rpl on long steps %.3g",
              worst_zhang, worst_long)};
}

Outcome tightness() {
  SearchBudget budget;
  budget.threads = 0;
  std::string detail;
  bool pass = true;
  for (Inequality ineq : {Inequality::pl, Inequality::rpl}) {
    const auto rows =
        tightness_curve(FnClass::convex, ineq, 1.0, 0.1, open_grid(0.0, 2.0, kTightnessGrid),
                        budget);
    double worst = -std::numeric_limits<double>::infinity(), worst_gamma = 0.0;
    bool sound = true;
    for (const auto& r : rows) {
      if (!(r.searched_ratio <= r.analytic_rate + kSoundnessTolerance)) sound = false;
      if (r.gap > worst) {
        worst = r.gap;
        worst_gamma = r.gamma;
      }
    }
    pass = pass && sound && worst <= kTightnessTol;
    detail += fmt("%sconvex/%s max gap %.3g at gamma=%.4g%s", detail.empty() ? "" : "; ",
                  ineq == Inequality::pl ? "pl" : "rpl", worst, worst_gamma,
                  sound ? "" : " UNSOUND");
  }
  return {pass, detail};
}

ExperimentSpec elastic_spec(double delta, std::uint64_t seed) {
  ExperimentSpec s;
  s.kind = ProblemKind::elastic_net;
  s.n = 200;
  s.d = 20;
  s.lambda = 0.1;
  s.delta = delta;
  s.seed = seed;
  s.policies = {parse_step_policy("1/L"), parse_step_policy("optimal"),
                parse_step_policy("1.9/L")};
  s.gap_tol = 1e-8;
  s.threads = 0;
  return s;
}

// Top of A^T A that puts mu/L at the value whose interior step is 1.404/L
// when delta = 100, with a rank-deficient A.
double matching_lambda_max() {
  const double root = 2.0 / 1.404 - 1.0;
  return 100.0 / (root * root) - 100.0;
}

Outcome elastic_net() {
  bool pass = true;
  std::string detail;
  for (double delta : {1e-2, 100.0}) {
    int ordered = 0;
    long factors = 0, over = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const ExperimentResult r = run_experiment(elastic_spec(delta, seed));
      for (const PolicyResult& p : r.policies) {
        for (double f : p.contraction.factors) {
          ++factors;
          worst_excess = std::max(worst_excess, f - *p.analytic_bound);
          if (f > *p.analytic_bound + kBoundSlack) ++over;
        }
      }
      const auto& one = r.policies[0].iterations_to_tol;
      const auto& opt = r.policies[1].iterations_to_tol;
      if (opt && (!one || *opt <= *one)) ++ordered;
    }
    pass = pass && over == 0 && ordered * 10 >= 9 * kSeeds;
    detail += fmt("delta=%g: %ld/%ld factors above bound (max excess %.3g), optimal<=1/L on "
                  "%d/%d; ",
                  delta, over, factors, worst_excess, ordered, kSeeds);
  }

  const SpectrumTarget target{0.0, matching_lambda_max()};
  double worst_rel[2] = {0.0, 0.0};
  for (int seed = 1; seed <= kSeeds; ++seed) {
    for (int k = 0; k < 2; ++k) {
      const double delta = k == 0 ? 1e-2 : 100.0;
      const double reported = k == 0 ? 1.991 : 1.404;
      const CompositeProblem prob = make_problem(generate_problem(
          ProblemKind::elastic_net, 200, 20, 0.1, delta, static_cast<std::uint64_t>(seed),
          target));
      const double L = prob.f.lipschitz();
      const double scaled = rpl_interior_step(L, prob.mu->value) * L;
      worst_rel[k] = std::max(worst_rel[k], std::abs(scaled - reported) / reported);
    }
  }
  pass = pass && worst_rel[0] <= kCalibrationRelTol && worst_rel[1] <= kCalibrationRelTol;
  detail += fmt("matching spectrum: interior step vs 1.991/L rel err %.3g, vs 1.404/L %.3g",
                worst_rel[0], worst_rel[1]);
  return {pass, detail};
}

Outcome qualitative() {
  const std::vector<std::string> labels = {"1/L", "1.5/L", "sqrt3/L", "1.9/L"};
  struct Target {
    ProblemKind kind;
    const char* name;
    std::size_t best;
  };
  const Target targets[] = {{ProblemKind::srlr, "srlr", 2}, {ProblemKind::lasso, "lasso", 1}};
  bool pass = true;
  std::string detail;
  for (const Target& t : targets) {
    int ordered = 0, linear = 0;
    std::map<std::string, int> winners;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      ExperimentSpec s;
      s.kind = t.kind;
      s.seed = static_cast<std::uint64_t>(seed);
      for (const auto& l : labels) s.policies.push_back(parse_step_policy(l));
      s.threads = 0;
      const ExperimentResult r = run_experiment(s);
      bool all_linear = true;
      std::vector<double> iters;
      for (const PolicyResult& p : r.policies) {
        all_linear = all_linear && p.contraction.tail_geometric_mean < 1.0;
        iters.push_back(p.iterations_to_tol ? *p.iterations_to_tol
                                            : std::numeric_limits<double>::infinity());
      }
      linear += all_linear;
      const double best = *std::min_element(iters.begin(), iters.end());
      ordered += iters[t.best] <= best;
      winners[labels[static_cast<std::size_t>(std::min_element(iters.begin(), iters.end()) -
                                              iters.begin())]]++;
    }
    pass = pass && linear == kSeeds && ordered * 10 >= 8 * kSeeds;
    std::string w;
    for (const auto& [label, count] : winners) w += fmt(" %s:%d", label.c_str(), count);
    detail += fmt("%s%s: linear tail on %d/%d, %s best on %d/%d (fastest:%s)",
                  detail.empty() ? "" : "; ", t.name, linear, kSeeds,
                  labels[t.best].c_str(), ordered, kSeeds, w.c_str());
  }
  return {pass, detail};
}

double fd_error(const SmoothOracle& f, const Vector& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Vector fd(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    fd[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  const Vector g = f.gradient(x);
  return (fd - g).norm() / (1.0 + g.norm());
}

Outcome unit_suite() {
  std::mt19937_64 gen(808);
  std::normal_distribution<double> normal;
  const auto randn = [&](int n, double scale) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = scale * normal(gen);
    return v;
  };
  std::vector<std::pair<std::string, CompositeProblem>> problems;
  problems.emplace_back("srlr", make_problem(generate_problem(ProblemKind::srlr, 200, 20, 0.1,
                                                              {}, 8)));
  problems.emplace_back("lasso", make_problem(generate_problem(ProblemKind::lasso, 200, 20, 0.1,
                                                               {}, 8)));
  problems.emplace_back("elastic_net", make_problem(generate_problem(
                                           ProblemKind::elastic_net, 200, 20, 0.1, 0.5, 8)));

  double worst_fd = 0.0;
  for (auto& [name, p] : problems) {
    for (int k = 0; k < 50; ++k) worst_fd = std::max(worst_fd, fd_error(p.f, randn(20, 1.0)));
  }

  // h(y) >= h(p) + <(x - p)/gamma, y - p> for p = prox_{gamma h}(x).
  double worst_prox = -std::numeric_limits<double>::infinity();
  for (const ProxOperator& h : {l1_prox(0.3), elastic_net_prox(0.3, 0.7)}) {
    for (int k = 0; k < 1000; ++k) {
      const Vector x = randn(6, 2.0), y = randn(6, 2.0);
      const double gamma = 0.05 + std::abs(normal(gen));
      const Vector pr = h.prox(x, gamma);
      const double slack = h.value(pr) + (x - pr).dot(y - pr) / gamma - h.value(y);
      worst_prox = std::max(worst_prox, slack / (1.0 + std::abs(h.value(y))));
    }
  }

  double worst_soft = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vector x = randn(5, 2.0);
    const double t = std::abs(normal(gen));
    const Vector s = soft_threshold(x, t);
    for (int i = 0; i < 5; ++i) {
      const double want = x[i] > t ? x[i] - t : (x[i] < -t ? x[i] + t : 0.0);
      worst_soft = std::max(worst_soft, std::abs(s[i] - want));
    }
  }

  double worst_order = -std::numeric_limits<double>::infinity();
  for (auto& [name, p] : problems) {
    for (double c : {0.5, 1.0, 1.9}) {
      PgmConfig cfg;
      cfg.step = c / p.f.lipschitz();
      cfg.max_iters = 2000;
      const Trace t = run_pgm(p, cfg, Vector::Zero(20));
      double fstar = t.iterates.back().objective;
      for (const auto& r : t.iterates) fstar = std::min(fstar, r.objective);
      const TraceValidation v = validate_trace(p, t, fstar, p.mu ? p.mu->value : 0.0);
      worst_order =
          std::max(worst_order, v.max_residual_vs_subgradient / (1.0 + std::abs(fstar)));
    }
  }

  const bool pass = worst_fd <= kFdTol && worst_prox <= 1e-12 && worst_soft == 0.0 &&
                    worst_order <= 1e-12;
  return {pass, fmt("finite-difference gradient error %.3g, prox optimality slack %.3g, "
                    "soft-threshold error %.3g, residual minus subgradient norm %.3g",
                    worst_fd, worst_prox, worst_soft, worst_order)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
      {1, {"certificate suite", certificates}},
      {2, {"rate regressions", regressions}},
      {3, {"dominance and continuity", dominance_continuity}},
      {4, {"coincidence with known rates", coincidence}},
      {5, {"worst-case search tightness", tightness}},
      {6, {"elastic net bound compliance", elastic_net}},
      {7, {"step ordering on SRLR and LASSO", qualitative}},
      {8, {"oracle and prox checks", unit_suite}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (!criteria.count(k)) {
      std::fprintf(stderr, "acceptance: unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (const auto& [k, v] : criteria) selected.push_back(k);
  }
  bool all = true;
  for (int k : selected) {
    const auto& [name, fn] = criteria.at(k);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %d %s: %s: %s\n", k, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
