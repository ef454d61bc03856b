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

// pgmrate command-line front end. Scalar answers (rate, optimal-step) go to
// stdout; tables and reports go to files; errors go to stderr as one line
// "pgmrate: <category>: <message>".

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgmrate/pgmrate.h"

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Failure {
  int code;
  std::string message;
};

const char* category(int code) {
  switch (code) {
    case PGMRATE_E_USAGE: return "usage";
    case PGMRATE_E_DOMAIN: return "domain";
    case PGMRATE_E_VERIFICATION: return "verification";
    case PGMRATE_E_IO: return "io";
    default: return "internal";
  }
}

void check(int rc) {
  if (rc != PGMRATE_OK) throw Failure{rc, pgmrate_last_error()};
}

struct ProblemDeleter {
  void operator()(pgmrate_problem* p) const { pgmrate_problem_free(p); }
};
struct TraceDeleter {
  void operator()(pgmrate_trace* t) const { pgmrate_trace_free(t); }
};
struct ExperimentDeleter {
  void operator()(pgmrate_experiment* e) const { pgmrate_experiment_free(e); }
};
using ProblemPtr = std::unique_ptr<pgmrate_problem, ProblemDeleter>;

struct Globals {
  unsigned threads = 0;
  std::string out_dir;
};

std::string resolve_out(const Globals& g, const std::string& explicit_path,
                        const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  std::filesystem::path dir(g.out_dir.empty() ? "." : g.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{PGMRATE_E_IO, "cannot create output directory '" + dir.string() + "'"};
  return (dir / default_name).string();
}

// --class/--ineq ----------------------------------------------------------------

struct ClassFlags {
  std::string fn_class;
  std::string ineq;
  double L = 1.0;
  double mu = 0.1;

  void add(CLI::App* app, bool required) {
    auto* c = app->add_option("--class", fn_class, "function class of f: convex | nonconvex")
                  ->check(CLI::IsMember({"convex", "nonconvex"}));
    auto* i = app->add_option("--ineq", ineq, "error bound: pl | rpl")
                  ->check(CLI::IsMember({"pl", "rpl"}));
    if (required) {
      c->required();
      i->required();
    }
    app->add_option("--L", L, "gradient Lipschitz constant, L > 0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--mu", mu, "PL/RPL constant, mu > 0 (mu <= L for convex classes and "
                                "nonconvex/rpl; mu < L for the convex/rpl optimal step)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  int cls() const {
    int v = 0;
    check(pgmrate_parse_fn_class(fn_class.c_str(), &v));
    return v;
  }
  int inq() const {
    int v = 0;
    check(pgmrate_parse_inequality(ineq.c_str(), &v));
    return v;
  }
};

// Instance flags shared by solve and experiment -----------------------------------

struct InstanceFlags {
  std::string problem_file;
  std::string kind = "lasso";
  int n = 200;
  int d = 20;
  double lambda = 0.1;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  std::string split = "smooth";
  std::optional<double> spectrum_min;
  std::optional<double> spectrum_max;
  std::string save_problem;

  void add(CLI::App* app) {
    app->add_option("--problem", problem_file, "load the instance from a JSON document")
        ->check(CLI::ExistingFile);
    app->add_option("--kind", kind, "generated instance: srlr | lasso | elastic_net")
        ->check(CLI::IsMember({"srlr", "lasso", "elastic_net"}))
        ->capture_default_str();
    app->add_option("--n", n, "rows of A, integer >= 1")
        ->check(CLI::Range(1, 1'000'000))
        ->capture_default_str();
    app->add_option("--d", d, "columns of A, integer >= 1")
        ->check(CLI::Range(1, 100'000))
        ->capture_default_str();
    app->add_option("--lambda", lambda, "l1 weight, lambda > 0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--delta", delta, "elastic net ridge weight, delta > 0 (elastic_net only)")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "64-bit generator seed")->capture_default_str();
    app->add_option("--split", split,
                    "elastic net split: smooth (ridge term in f) | prox (ridge term in h)")
        ->check(CLI::IsMember({"smooth", "prox"}))
        ->capture_default_str();
    app->add_option("--spectrum-min", spectrum_min,
                    "target smallest eigenvalue of A^T A, >= 0 (with --spectrum-max)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--spectrum-max", spectrum_max,
                    "target largest eigenvalue of A^T A, > spectrum-min")
        ->check(CLI::PositiveNumber);
    app->add_option("--save-problem", save_problem, "also write the instance as JSON");
  }

  ProblemPtr build() const {
    pgmrate_problem* raw = nullptr;
    if (!problem_file.empty()) {
      check(pgmrate_problem_load(problem_file.c_str(), &raw));
    } else {
      pgmrate_problem_spec spec;
      pgmrate_problem_spec_default(&spec);
      spec.kind = kind.c_str();
      spec.n = n;
      spec.d = d;
      spec.lambda = lambda;
      spec.delta = delta ? *delta : kNaN;
      spec.seed = seed;
      spec.split = split.c_str();
      if (spectrum_min.has_value() != spectrum_max.has_value()) {
        throw Failure{PGMRATE_E_USAGE, "--spectrum-min and --spectrum-max go together"};
      }
      if (spectrum_min) {
        spec.spectrum_min = *spectrum_min;
        spec.spectrum_max = *spectrum_max;
      }
      check(pgmrate_problem_generate(&spec, &raw));
    }
    ProblemPtr p(raw);
    if (!save_problem.empty()) check(pgmrate_problem_save(p.get(), save_problem.c_str()));
    return p;
  }
};

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-';
    out.push_back(keep ? c : '_');
  }
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  if (n == 1) return {a};
  for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgmrate: worst-case rates, certificates, worst-case search and experiments "
               "for the proximal gradient method"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  Globals g;
  if (const char* env = std::getenv("PGMRATE_OUT_DIR")) g.out_dir = env;
  app.add_option("--threads", g.threads,
                 "worker threads, integer >= 0 (0: available parallelism)")
      ->check(CLI::Range(0u, 4096u));
  app.add_option("--out-dir", g.out_dir,
                 "directory for default output files (default: $PGMRATE_OUT_DIR or .)");

  // rate ---------------------------------------------------------------------------
  auto* rate_cmd = app.add_subcommand("rate", "worst-case one-step rate; prints '<rho> <branch>'");
  ClassFlags rate_flags;
  rate_flags.add(rate_cmd, true);
  std::optional<double> rate_gamma;
  int rate_grid = 0;
  std::string rate_out;
  rate_cmd->add_option("--gamma", rate_gamma, "step size, in (0, 2/L)");
  rate_cmd->add_option("--grid", rate_grid,
                       "write a rate curve on this many interior points of (0, 2/L), >= 1")
      ->check(CLI::Range(1, 10'000'000));
  rate_cmd->add_option("--out", rate_out, "rate curve CSV (default: rate_curve.csv)");

  // optimal-step -------------------------------------------------------------------
  auto* opt_cmd = app.add_subcommand("optimal-step",
                                     "step minimizing the worst-case rate; prints "
                                     "'<gamma> <rho> <branch>'");
  ClassFlags opt_flags;
  opt_flags.add(opt_cmd, true);

  // certify ------------------------------------------------------------------------
  auto* cert_cmd = app.add_subcommand("certify", "verify the rate certificates on step grids");
  std::string cert_case = "all";
  double cert_L = 1.0, cert_mu = 0.1;
  int cert_grid = 200;
  bool cert_exact = false;
  std::string cert_out;
  std::string case_help = "certificate case: all";
  for (std::size_t i = 0; i < pgmrate_certificate_count(); ++i) {
    char buf[64];
    if (pgmrate_certificate_name(i, buf, sizeof buf) == PGMRATE_OK) {
      case_help += std::string(" | ") + buf;
    }
  }
  cert_cmd->add_option("--case", cert_case, case_help)->capture_default_str();
  cert_cmd->add_option("--L", cert_L, "L > 0")->check(CLI::PositiveNumber)->capture_default_str();
  cert_cmd->add_option("--mu", cert_mu, "mu > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cert_cmd->add_option("--grid", cert_grid, "points per case interval, integer >= 1")
      ->check(CLI::Range(1, 10'000'000))
      ->capture_default_str();
  cert_cmd->add_flag("--exact", cert_exact, "repeat every point in exact rational arithmetic");
  cert_cmd->add_option("--out", cert_out, "JSON report (default: certificate_report.json)");

  // pep-search ---------------------------------------------------------------------
  auto* pep_cmd = app.add_subcommand("pep-search",
                                     "search worst-case one-step instances; writes a "
                                     "tightness CSV");
  ClassFlags pep_flags;
  pep_flags.add(pep_cmd, true);
  std::optional<double> pep_gamma, pep_gmin, pep_gmax;
  int pep_grid = 25;
  pgmrate_search_budget budget;
  pgmrate_search_budget_default(&budget);
  std::string pep_out;
  pep_cmd->add_option("--gamma", pep_gamma, "single step size, in (0, 2/L)");
  pep_cmd->add_option("--grid", pep_grid, "number of steps on [gamma-min, gamma-max], >= 1")
      ->check(CLI::Range(1, 100'000))
      ->capture_default_str();
  pep_cmd->add_option("--gamma-min", pep_gmin, "first grid step, in (0, 2/L) (default 0.01/L)");
  pep_cmd->add_option("--gamma-max", pep_gmax, "last grid step, in (0, 2/L) (default 1.99/L)");
  pep_cmd->add_option("--restarts", budget.restarts, "multistart count, integer >= 1")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();
  pep_cmd->add_option("--max-outer", budget.max_outer, "penalty rounds per restart, >= 1")
      ->check(CLI::Range(1, 10'000))
      ->capture_default_str();
  pep_cmd->add_option("--max-inner", budget.max_inner, "quasi-Newton steps per round, >= 1")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();
  pep_cmd->add_option("--feas-tol", budget.feas_tol, "constraint slack tolerance, > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pep_cmd->add_option("--seed", budget.seed, "64-bit master seed")->capture_default_str();
  pep_cmd->add_option("--out", pep_out, "tightness CSV (default: tightness.csv)");

  // solve --------------------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "run PGM from the origin; writes a trace CSV");
  InstanceFlags solve_inst;
  solve_inst.add(solve_cmd);
  std::string solve_step = "1/L";
  int solve_iters = 100'000;
  double solve_tol = 1e-10;
  bool solve_fstar = false;
  std::string solve_out;
  solve_cmd->add_option("--step", solve_step,
                        "step policy: c/L (c > 0) | sqrt3/L | gamma > 0 | optimal | "
                        "rpl-interior; resulting step must lie in (0, 2/L)")
      ->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_iters, "iteration cap, integer >= 1")
      ->check(CLI::Range(1, 100'000'000))
      ->capture_default_str();
  solve_cmd->add_option("--stop-tol", solve_tol,
                        "stop when the proximal residual norm <= this, >= 0")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve_cmd->add_flag("--fstar", solve_fstar, "estimate F* to fill gap and contraction columns");
  solve_cmd->add_option("--out", solve_out, "trace CSV (default: trace.csv)");

  // experiment ---------------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment",
                                     "compare step policies; writes summary.csv, per-policy "
                                     "trace CSVs and problem.json");
  InstanceFlags exp_inst;
  exp_inst.add(exp_cmd);
  std::vector<std::string> exp_steps{"1/L", "optimal", "1.9/L"};
  int exp_iters = 100'000;
  double exp_tol = 1e-10, exp_gap = 1e-8;
  exp_cmd->add_option("--steps", exp_steps,
                      "comma-separated step policies (each as in solve --step)")
      ->delimiter(',')
      ->capture_default_str();
  exp_cmd->add_option("--max-iters", exp_iters, "iteration cap per policy, integer >= 1")
      ->check(CLI::Range(1, 100'000'000))
      ->capture_default_str();
  exp_cmd->add_option("--stop-tol", exp_tol, "residual stopping tolerance, >= 0")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  exp_cmd->add_option("--gap-tol", exp_gap, "gap defining iterations_to_tol, > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    std::fprintf(stderr, "pgmrate: usage: %s\n", msg.c_str());
    return PGMRATE_E_USAGE;
  }

  try {
    if (rate_cmd->parsed()) {
      if (!rate_gamma && rate_grid == 0) {
        throw Failure{PGMRATE_E_USAGE, "rate needs --gamma or --grid"};
      }
      if (rate_gamma) {
        double rho = 0.0;
        char branch[64];
        check(pgmrate_rate(rate_flags.cls(), rate_flags.inq(), rate_flags.L, rate_flags.mu,
                           *rate_gamma, &rho, branch, sizeof branch));
        std::printf("%.17g %s\n", rho, branch);
      }
      if (rate_grid > 0) {
        std::vector<double> gammas;
        for (int k = 1; k <= rate_grid; ++k) {
          gammas.push_back(2.0 / rate_flags.L * k / (rate_grid + 1.0));
        }
        const std::string path = resolve_out(g, rate_out, "rate_curve.csv");
        check(pgmrate_rate_curve_csv(rate_flags.cls(), rate_flags.inq(), rate_flags.L,
                                     rate_flags.mu, gammas.data(), gammas.size(), path.c_str()));
      }
    } else if (opt_cmd->parsed()) {
      double gamma = 0.0, rho = 0.0;
      char branch[64];
      check(pgmrate_optimal_step(opt_flags.cls(), opt_flags.inq(), opt_flags.L, opt_flags.mu,
                                 &gamma, &rho, branch, sizeof branch));
      std::printf("%.17g %.17g %s\n", gamma, rho, branch);
    } else if (cert_cmd->parsed()) {
      const std::string path = resolve_out(g, cert_out, "certificate_report.json");
      int passed = 0;
      check(pgmrate_certify(cert_case.c_str(), cert_L, cert_mu, cert_grid, cert_exact ? 1 : 0,
                            g.threads, path.c_str(), &passed));
    } else if (pep_cmd->parsed()) {
      budget.threads = g.threads;
      const double L = pep_flags.L;
      std::vector<double> gammas;
      if (pep_gamma) {
        gammas = {*pep_gamma};
      } else {
        const double lo = pep_gmin.value_or(0.01 / L), hi = pep_gmax.value_or(1.99 / L);
        if (!(lo <= hi)) throw Failure{PGMRATE_E_USAGE, "--gamma-min exceeds --gamma-max"};
        gammas = linspace(lo, hi, pep_grid);
      }
      const std::string path = resolve_out(g, pep_out, "tightness.csv");
      double max_gap = 0.0;
      int sound = 1;
      check(pgmrate_tightness_csv(pep_flags.cls(), pep_flags.inq(), L, pep_flags.mu,
                                  gammas.data(), gammas.size(), &budget, path.c_str(), &max_gap,
                                  &sound));
    } else if (solve_cmd->parsed()) {
      ProblemPtr p = solve_inst.build();
      pgmrate_trace* raw = nullptr;
      check(pgmrate_solve(p.get(), solve_step.c_str(), solve_iters, solve_tol,
                          solve_fstar ? 1 : 0, &raw));
      std::unique_ptr<pgmrate_trace, TraceDeleter> trace(raw);
      const std::string path = resolve_out(g, solve_out, "trace.csv");
      check(pgmrate_trace_write_csv(trace.get(), path.c_str()));
    } else if (exp_cmd->parsed()) {
      ProblemPtr p = exp_inst.build();
      std::vector<const char*> policies;
      for (const auto& s : exp_steps) policies.push_back(s.c_str());
      pgmrate_experiment_spec spec;
      pgmrate_experiment_spec_default(&spec);
      spec.policies = policies.data();
      spec.policy_count = policies.size();
      spec.max_iters = exp_iters;
      spec.stop_tol = exp_tol;
      spec.gap_tol = exp_gap;
      spec.threads = g.threads;
      pgmrate_experiment* raw = nullptr;
      check(pgmrate_experiment_run(p.get(), &spec, &raw));
      std::unique_ptr<pgmrate_experiment, ExperimentDeleter> exp(raw);
      check(pgmrate_experiment_write_summary(exp.get(),
                                             resolve_out(g, "", "summary.csv").c_str()));
      check(pgmrate_problem_save(p.get(), resolve_out(g, "", "problem.json").c_str()));
      for (std::size_t i = 0; i < policies.size(); ++i) {
        char label[64];
        check(pgmrate_experiment_policy_label(exp.get(), i, label, sizeof label));
        const std::string name = "trace_" + std::to_string(i) + "_" + sanitize(label) + ".csv";
        check(pgmrate_experiment_write_trace(exp.get(), i, resolve_out(g, "", name).c_str()));
      }
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "pgmrate: %s: %s\n", category(f.code), f.message.c_str());
    return f.code == PGMRATE_E_INTERNAL ? 1 : f.code;
  }
  return 0;
}
