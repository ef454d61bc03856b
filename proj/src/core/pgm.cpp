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

#include "pgm.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "error.hpp"

namespace pgmrate {
namespace {

void check_finite(const Vector& v, const char* what, int iter) {
  if (!v.allFinite()) {
    throw DomainError(std::string("non-finite ") + what + " at iteration " +
                      std::to_string(iter));
  }
}

void check_finite(double v, const char* what, int iter) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite ") + what + " at iteration " +
                      std::to_string(iter));
  }
}

}  // namespace

Residual residual(const CompositeProblem& problem, double gamma, const Vector& x) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("residual step must be positive");
  }
  if (x.size() != problem.dim()) throw DomainError("point has wrong dimension");
  check_finite(x, "point", 0);
  const Vector grad = problem.f.gradient(x);
  check_finite(grad, "gradient", 0);
  Residual r;
  r.g = (x - problem.h.prox(x - gamma * grad, gamma)) / gamma;
  r.norm = r.g.norm();
  return r;
}

Trace run_pgm(const CompositeProblem& problem, const PgmConfig& config,
              const Vector& x1) {
  const double lip = problem.f.lipschitz();
  const double gamma = config.step;
  if (!(gamma > 0.0 && gamma < 2.0 / lip)) {
    throw DomainError("gamma out of (0, 2/L)");
  }
  if (config.max_iters < 1) throw DomainError("max_iters must be positive");
  if (!(config.stop_tol >= 0.0)) throw DomainError("stop_tol must be nonnegative");
  if (x1.size() != problem.dim()) throw DomainError("start point has wrong dimension");
  check_finite(x1, "start point", 1);

  Trace trace;
  trace.step = gamma;
  trace.iterates.reserve(static_cast<std::size_t>(std::min(config.max_iters, 1 << 16)) + 1);
  Vector x = x1;
  for (int i = 1;; ++i) {
    IterateRecord rec;
    rec.f = problem.f.value(x);
    rec.h = problem.h.value(x);
    check_finite(rec.f, "value of f", i);
    check_finite(rec.h, "value of h", i);
    rec.objective = rec.f + rec.h;

    const Vector g = problem.f.gradient(x);
    check_finite(g, "gradient", i);
    const Vector forward = x - gamma * g;
    Vector next = problem.h.prox(forward, gamma);
    check_finite(next, "prox output", i);
    rec.residual_norm = (x - next).norm() / gamma;

    if (!trace.iterates.empty()) {
      const double prev = trace.iterates.back().objective;
      if (rec.objective > prev + significance_floor(prev, 0.0)) trace.monotone = false;
    }
    const bool done = rec.residual_norm <= config.stop_tol;
    const bool budget = (i - 1) >= config.max_iters;
    if (done || budget) {
      rec.x = x;
      trace.iterates.push_back(std::move(rec));
      trace.converged = done;
      trace.iterations = i - 1;
      trace.final_point = std::move(x);
      break;
    }
    if (config.record_subgradients) {
      rec.g = g;
      rec.s_next = (forward - next) / gamma;
    }
    rec.x = std::move(x);
    trace.iterates.push_back(std::move(rec));
    x = std::move(next);
  }
  if (problem.optimal_value) attach_optimal_value(trace, *problem.optimal_value);
  return trace;
}

double significance_floor(double fstar, double extra_uncertainty) noexcept {
  return 1e2 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(fstar)) +
         extra_uncertainty;
}

void attach_optimal_value(Trace& trace, double fstar, double extra_uncertainty) {
  trace.optimal_value = fstar;
  trace.contraction.clear();
  if (trace.iterates.size() < 2) return;
  const double floor = significance_floor(fstar, extra_uncertainty);
  trace.contraction.reserve(trace.iterates.size() - 1);
  for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
    const double gap = trace.iterates[i].objective - fstar;
    const double next_gap = trace.iterates[i + 1].objective - fstar;
    trace.contraction.push_back(gap > floor ? next_gap / gap
                                            : std::numeric_limits<double>::quiet_NaN());
  }
}

FstarEstimate estimate_fstar(const CompositeProblem& problem,
                             const PgmConfig& config, const Vector& x1) {
  PgmConfig long_run = config;
  long_run.step = 1.0 / problem.f.lipschitz();
  long_run.record_subgradients = false;
  const Trace trace = run_pgm(problem, long_run, x1);
  FstarEstimate est;
  est.value = std::numeric_limits<double>::infinity();
  for (const auto& rec : trace.iterates) {
    if (rec.objective < est.value) {
      est.value = rec.objective;
      est.point = rec.x;
    }
  }
  est.iterations = trace.iterations;
  est.residual_norm = trace.iterates.back().residual_norm;
  est.stale = !trace.converged;
  return est;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "iter,F,gap,residual_norm,contraction\n";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    const auto& rec = trace.iterates[i];
    out << (i + 1) << ',' << format_double(rec.objective) << ',';
    if (trace.optimal_value) out << format_double(rec.objective - *trace.optimal_value);
    out << ',' << format_double(rec.residual_norm) << ',';
    if (i < trace.contraction.size() && !std::isnan(trace.contraction[i])) {
      out << format_double(trace.contraction[i]);
    }
    out << '\n';
  }
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_trace_csv(trace, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pgmrate
