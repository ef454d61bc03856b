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

// Step-size comparisons on generated SRLR, LASSO and elastic net instances.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pgm.hpp"
#include "problem.hpp"

namespace pgmrate {

enum class PolicyKind {
  scaled,        // γ = c/L
  absolute,      // γ = c
  optimal,       // worst-case-optimal step for the instance's class
  rpl_interior,  // 2/(√L(√L + √μ)); needs μ
};

struct StepPolicy {
  PolicyKind kind = PolicyKind::scaled;
  double value = 1.0;

  /// "1/L", "1.5/L", "sqrt3/L", "0.01", "optimal", "rpl-interior".
  std::string label() const;
};

/// Inverse of StepPolicy::label; also accepts "c/L" for any positive c.
StepPolicy parse_step_policy(std::string_view s);

struct ResolvedStep {
  double gamma = 0.0;
  std::string branch;  // optimal-step branch, empty otherwise
};

/// Step size of a policy on a given problem. `optimal` uses the instance's μ and
/// inequality tag when present, else the PL-optimal step, which is μ-free.
ResolvedStep resolve_step(const StepPolicy& p, const CompositeProblem& prob);

struct ExperimentSpec {
  ProblemKind kind = ProblemKind::lasso;
  int n = 200;
  int d = 20;
  double lambda = 0.1;
  std::optional<double> delta;  // elastic net only
  std::uint64_t seed = 1;
  ElasticSplit split = ElasticSplit::smooth;
  std::optional<SpectrumTarget> spectrum;
  std::vector<StepPolicy> policies;

  int max_iters = 100'000;
  double stop_tol = 1e-10;
  double gap_tol = 1e-8;
  int reference_max_iters = 1'000'000;
  double reference_stop_tol = 1e-13;
  /// Gap reference: F_* when supplied, otherwise F̂ from the reference run.
  std::optional<double> fstar;
  bool record_subgradients = false;
  unsigned threads = 1;
};

struct ContractionSummary {
  std::vector<double> factors;  // significant (F_{i+1} − F_*)/(F_i − F_*) only
  double max_factor = 0.0;      // NaN when no factor is significant
  /// Geometric mean over the last quarter of `factors` (at least one).
  double tail_geometric_mean = 0.0;
};

/// Factors filtered by significance_floor(fstar, extra_uncertainty). Throws
/// DomainError for an empty trace.
ContractionSummary empirical_contraction(const Trace& trace, double fstar,
                                         double extra_uncertainty = 0.0);

struct PolicyResult {
  StepPolicy policy;
  double gamma = 0.0;
  std::string branch;  // optimal-step branch, empty otherwise
  Trace trace;
  std::optional<int> iterations_to_tol;
  ContractionSummary contraction;
  std::optional<double> analytic_bound;  // convex/RPL rate when μ is known
};

struct ExperimentResult {
  ProblemDocument doc;
  double L = 0.0;
  std::optional<double> mu;
  double fstar = 0.0;  // F̂ or the supplied F_*
  /// Noise level of F near the reference, folded into contraction
  /// significance.
  double fstar_uncertainty = 0.0;
  bool fstar_estimated = true;
  bool reference_stale = false;
  int reference_iterations = 0;
  std::vector<PolicyResult> policies;
};

/// Generates the instance from the spec and runs every policy from the origin.
ExperimentResult run_experiment(const ExperimentSpec& spec);
/// Same on a given instance; spec fields describing the instance are ignored.
ExperimentResult run_experiment(const ProblemDocument& doc, const ExperimentSpec& spec);

/// CSV: policy,gamma,iterations_to_tol,max_contraction,analytic_bound.
void write_summary_csv(const ExperimentResult& result, std::ostream& out);
void write_summary_csv(const ExperimentResult& result, const std::filesystem::path& path);

}  // namespace pgmrate
