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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "classes.hpp"
#include "numeric.hpp"

namespace pgmrate {

/// Smooth part f of F = f + h: value, gradient and a global Lipschitz
/// constant of the gradient. Immutable; copies share the underlying data.
class SmoothOracle {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  SmoothOracle(Eigen::Index dim, ValueFn value, GradientFn gradient,
               double lipschitz, FnClass fn_class);

  double value(const Vector& x) const { return value_(x); }
  Vector gradient(const Vector& x) const { return gradient_(x); }
  double lipschitz() const noexcept { return lipschitz_; }
  FnClass fn_class() const noexcept { return fn_class_; }
  Eigen::Index dim() const noexcept { return dim_; }

 private:
  Eigen::Index dim_;
  ValueFn value_;
  GradientFn gradient_;
  double lipschitz_;
  FnClass fn_class_;
};

/// Closed convex part h with its proximal map.
class ProxOperator {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using ProxFn = std::function<Vector(const Vector&, double)>;
  using SubgradientFn = std::function<Vector(const Vector&)>;

  ProxOperator(ValueFn value, ProxFn prox, SubgradientFn subgradient);

  double value(const Vector& x) const { return value_(x); }
  /// argmin_y h(y) + ‖y − x‖²/(2γ).
  Vector prox(const Vector& x, double gamma) const;
  /// s = (x − prox(x, γ))/γ, which lies in ∂h(prox(x, γ)).
  Vector subgradient_at_prox(const Vector& x, double gamma) const;
  /// Some element of ∂h(x) at an arbitrary point (sign rule for ℓ₁ terms).
  Vector subgradient(const Vector& x) const { return subgradient_(x); }

 private:
  ValueFn value_;
  ProxFn prox_;
  SubgradientFn subgradient_;
};

struct PlConstant {
  double value = 0.0;
  Inequality ineq = Inequality::pl;
};

struct CompositeProblem {
  SmoothOracle f;
  ProxOperator h;
  std::optional<double> optimal_value;
  std::optional<PlConstant> mu;

  double value(const Vector& x) const { return f.value(x) + h.value(x); }
  Eigen::Index dim() const noexcept { return f.dim(); }
};

// Smooth oracles --------------------------------------------------------------

/// ½‖Ax − b‖², L = λ_max(AᵀA).
SmoothOracle least_squares_oracle(const Matrix& a, const Vector& b);
/// ½‖Ax − b‖² + (δ/2)‖x‖², L = λ_max(AᵀA) + δ.
SmoothOracle ridge_least_squares_oracle(const Matrix& a, const Vector& b,
                                        double delta);
/// Σ_k log((Ax − b)_k² + 1), L = 2·λ_max(AᵀA).
SmoothOracle robust_log_oracle(const Matrix& a, const Vector& b);
/// (c/2)‖x‖² in dimension d; used for hand-checkable cases.
SmoothOracle quadratic_oracle(Eigen::Index dim, double curvature = 1.0);

// Proximal operators ----------------------------------------------------------

Vector soft_threshold(const Vector& x, double threshold);

ProxOperator zero_prox();
/// λ‖x‖₁.
ProxOperator l1_prox(double lambda);
/// λ‖x‖₁ + (δ/2)‖x‖²; prox is soft-threshold(x, γλ)/(1 + γδ).
ProxOperator elastic_net_prox(double lambda, double delta);

// Experiment instances --------------------------------------------------------

enum class ProblemKind { srlr, lasso, elastic_net };

/// Where the (δ/2)‖x‖² term of the elastic net lives. `smooth` folds it into
/// f (L = λ_max + δ); `prox` keeps it inside h (L = λ_max).
enum class ElasticSplit { smooth, prox };

std::string_view to_string(ProblemKind k) noexcept;
ProblemKind parse_problem_kind(std::string_view s);
std::string_view to_string(ElasticSplit s) noexcept;
ElasticSplit parse_elastic_split(std::string_view s);

/// Target extreme eigenvalues of AᵀA. Generated singular values are mapped
/// affinely so that the spectrum of AᵀA spans [lambda_min, lambda_max].
struct SpectrumTarget {
  double lambda_min = 0.0;
  double lambda_max = 1.0;
};

/// Replayable description of an experiment instance.
struct ProblemDocument {
  ProblemKind kind = ProblemKind::lasso;
  Matrix a;
  Vector b;
  double lambda = 0.1;
  std::optional<double> delta;
  std::uint64_t seed = 0;
  ElasticSplit split = ElasticSplit::smooth;
  std::optional<SpectrumTarget> spectrum;
};

/// i.i.d. standard normal A (filled row by row) then b, from `seed`.
ProblemDocument generate_problem(ProblemKind kind, int n, int d, double lambda,
                                 std::optional<double> delta,
                                 std::uint64_t seed,
                                 std::optional<SpectrumTarget> spectrum = {},
                                 ElasticSplit split = ElasticSplit::smooth);

/// Builds the composite problem. For the elastic net, μ = λ_min(AᵀA) + δ is
/// attached with the RPL tag.
CompositeProblem make_problem(const ProblemDocument& doc);

std::string problem_to_json(const ProblemDocument& doc);
ProblemDocument problem_from_json(std::string_view text);
void save_problem(const ProblemDocument& doc, const std::filesystem::path& path);
ProblemDocument load_problem(const std::filesystem::path& path);

}  // namespace pgmrate
