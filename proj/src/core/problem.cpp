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

#include "problem.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include <Eigen/SVD>
#include <json.hpp>

#include "error.hpp"

namespace pgmrate {
namespace {

struct LinearData {
  Matrix a;
  Vector b;
};

std::shared_ptr<const LinearData> checked_data(const Matrix& a, const Vector& b) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("matrix A is empty");
  if (a.rows() != b.size()) {
    throw DomainError("dimension mismatch: A has " + std::to_string(a.rows()) +
                      " rows but b has " + std::to_string(b.size()) +
                      " entries");
  }
  if (a.isZero(0.0)) throw DomainError("matrix A is zero");
  if (!a.allFinite() || !b.allFinite()) throw DomainError("A or b not finite");
  return std::make_shared<const LinearData>(LinearData{a, b});
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

double lambda_max(const Matrix& a) {
  const EigenEstimate e = largest_eigenvalue_ata(a);
  if (!e.converged) throw DomainError("power iteration did not converge");
  return e.value;
}

}  // namespace

SmoothOracle::SmoothOracle(Eigen::Index dim, ValueFn value, GradientFn gradient,
                           double lipschitz, FnClass fn_class)
    : dim_(dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      lipschitz_(lipschitz),
      fn_class_(fn_class) {
  require_positive(lipschitz, "Lipschitz constant");
  if (dim <= 0) throw DomainError("dimension must be positive");
}

ProxOperator::ProxOperator(ValueFn value, ProxFn prox, SubgradientFn subgradient)
    : value_(std::move(value)),
      prox_(std::move(prox)),
      subgradient_(std::move(subgradient)) {}

Vector ProxOperator::prox(const Vector& x, double gamma) const {
  require_positive(gamma, "prox step");
  return prox_(x, gamma);
}

Vector ProxOperator::subgradient_at_prox(const Vector& x, double gamma) const {
  return (x - prox(x, gamma)) / gamma;
}

SmoothOracle least_squares_oracle(const Matrix& a, const Vector& b) {
  auto data = checked_data(a, b);
  return SmoothOracle(
      a.cols(),
      [data](const Vector& x) {
        return 0.5 * (data->a * x - data->b).squaredNorm();
      },
      [data](const Vector& x) -> Vector {
        return data->a.transpose() * (data->a * x - data->b);
      },
      lambda_max(a), FnClass::convex);
}

SmoothOracle ridge_least_squares_oracle(const Matrix& a, const Vector& b,
                                        double delta) {
  require_positive(delta, "delta");
  auto data = checked_data(a, b);
  return SmoothOracle(
      a.cols(),
      [data, delta](const Vector& x) {
        return 0.5 * (data->a * x - data->b).squaredNorm() +
               0.5 * delta * x.squaredNorm();
      },
      [data, delta](const Vector& x) -> Vector {
        return data->a.transpose() * (data->a * x - data->b) + delta * x;
      },
      lambda_max(a) + delta, FnClass::convex);
}

SmoothOracle robust_log_oracle(const Matrix& a, const Vector& b) {
  auto data = checked_data(a, b);
  // sup |d²/dt² log(t² + 1)| = 2, attained at t = 0.
  return SmoothOracle(
      a.cols(),
      [data](const Vector& x) {
        const Vector r = data->a * x - data->b;
        return (r.array().square() + 1.0).log().sum();
      },
      [data](const Vector& x) -> Vector {
        const Vector r = data->a * x - data->b;
        const Vector w = (2.0 * r.array() / (r.array().square() + 1.0)).matrix();
        return data->a.transpose() * w;
      },
      2.0 * lambda_max(a), FnClass::nonconvex);
}

SmoothOracle quadratic_oracle(Eigen::Index dim, double curvature) {
  require_positive(curvature, "curvature");
  return SmoothOracle(
      dim, [curvature](const Vector& x) { return 0.5 * curvature * x.squaredNorm(); },
      [curvature](const Vector& x) -> Vector { return curvature * x; },
      curvature, FnClass::convex);
}

Vector soft_threshold(const Vector& x, double threshold) {
  return x.unaryExpr([threshold](double v) {
    if (v > threshold) return v - threshold;
    if (v < -threshold) return v + threshold;
    return 0.0;
  });
}

namespace {

Vector sign_vector(const Vector& x) {
  return x.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
}

}  // namespace

ProxOperator zero_prox() {
  return ProxOperator([](const Vector&) { return 0.0; },
                      [](const Vector& x, double) -> Vector { return x; },
                      [](const Vector& x) -> Vector { return Vector::Zero(x.size()); });
}

ProxOperator l1_prox(double lambda) {
  require_positive(lambda, "lambda");
  return ProxOperator(
      [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); },
      [lambda](const Vector& x, double gamma) -> Vector {
        return soft_threshold(x, gamma * lambda);
      },
      [lambda](const Vector& x) -> Vector { return lambda * sign_vector(x); });
}

ProxOperator elastic_net_prox(double lambda, double delta) {
  require_positive(lambda, "lambda");
  require_positive(delta, "delta");
  return ProxOperator(
      [lambda, delta](const Vector& x) {
        return lambda * x.lpNorm<1>() + 0.5 * delta * x.squaredNorm();
      },
      [lambda, delta](const Vector& x, double gamma) -> Vector {
        return soft_threshold(x, gamma * lambda) / (1.0 + gamma * delta);
      },
      [lambda, delta](const Vector& x) -> Vector {
        return lambda * sign_vector(x) + delta * x;
      });
}

std::string_view to_string(ProblemKind k) noexcept {
  switch (k) {
    case ProblemKind::srlr:
      return "srlr";
    case ProblemKind::lasso:
      return "lasso";
    case ProblemKind::elastic_net:
      return "elastic_net";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view s) {
  if (s == "srlr") return ProblemKind::srlr;
  if (s == "lasso") return ProblemKind::lasso;
  if (s == "elastic_net" || s == "elastic-net") return ProblemKind::elastic_net;
  throw UsageError("unknown problem kind '" + std::string(s) + "'");
}

std::string_view to_string(ElasticSplit s) noexcept {
  return s == ElasticSplit::smooth ? "smooth" : "prox";
}

ElasticSplit parse_elastic_split(std::string_view s) {
  if (s == "smooth") return ElasticSplit::smooth;
  if (s == "prox") return ElasticSplit::prox;
  throw UsageError("unknown elastic-net split '" + std::string(s) + "'");
}

ProblemDocument generate_problem(ProblemKind kind, int n, int d, double lambda,
                                 std::optional<double> delta, std::uint64_t seed,
                                 std::optional<SpectrumTarget> spectrum,
                                 ElasticSplit split) {
  if (n < 1 || d < 1) throw DomainError("n and d must be at least 1");
  require_positive(lambda, "lambda");
  if ((kind == ProblemKind::elastic_net) != delta.has_value()) {
    throw DomainError("delta must be given exactly for the elastic net");
  }
  if (delta) require_positive(*delta, "delta");

  ProblemDocument doc;
  doc.kind = kind;
  doc.lambda = lambda;
  doc.delta = delta;
  doc.seed = seed;
  doc.split = split;
  doc.spectrum = spectrum;
  doc.a.resize(n, d);
  doc.b.resize(n);
  NormalSampler normal(seed);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) doc.a(i, j) = normal();
  for (int i = 0; i < n; ++i) doc.b[i] = normal();

  if (spectrum) {
    if (!(spectrum->lambda_min >= 0.0) ||
        !(spectrum->lambda_max > spectrum->lambda_min)) {
      throw DomainError("spectrum target needs 0 <= lambda_min < lambda_max");
    }
    Eigen::JacobiSVD<Matrix> svd(doc.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector eig = svd.singularValues().array().square().matrix();
    // Rank-deficient shapes (n < d) have implicit zero eigenvalues.
    const double lo = (n < d) ? 0.0 : eig.minCoeff();
    const double hi = eig.maxCoeff();
    const double span = hi - lo;
    Vector sigma(eig.size());
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      const double t = span > 0.0 ? (eig[i] - lo) / span : 1.0;
      const double mapped =
          spectrum->lambda_min + t * (spectrum->lambda_max - spectrum->lambda_min);
      sigma[i] = std::sqrt(std::max(mapped, 0.0));
    }
    doc.a = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().transpose();
  }
  return doc;
}

CompositeProblem make_problem(const ProblemDocument& doc) {
  switch (doc.kind) {
    case ProblemKind::srlr:
      return {robust_log_oracle(doc.a, doc.b), l1_prox(doc.lambda), {}, {}};
    case ProblemKind::lasso:
      return {least_squares_oracle(doc.a, doc.b), l1_prox(doc.lambda), {}, {}};
    case ProblemKind::elastic_net: {
      if (!doc.delta) throw DomainError("elastic net requires delta");
      const double delta = *doc.delta;
      const EigenEstimate low = smallest_eigenvalue_ata(doc.a);
      if (!low.converged) throw DomainError("inverse iteration did not converge");
      const PlConstant mu{low.value + delta, Inequality::rpl};
      if (doc.split == ElasticSplit::smooth) {
        return {ridge_least_squares_oracle(doc.a, doc.b, delta),
                l1_prox(doc.lambda), {}, mu};
      }
      return {least_squares_oracle(doc.a, doc.b),
              elastic_net_prox(doc.lambda, delta), {}, mu};
    }
  }
  throw DomainError("unknown problem kind");
}

std::string problem_to_json(const ProblemDocument& doc) {
  using nlohmann::json;
  json j;
  j["kind"] = std::string(to_string(doc.kind));
  j["n"] = doc.a.rows();
  j["d"] = doc.a.cols();
  json rows = json::array();
  for (Eigen::Index i = 0; i < doc.a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < doc.a.cols(); ++k) row.push_back(doc.a(i, k));
    rows.push_back(std::move(row));
  }
  j["A"] = std::move(rows);
  j["b"] = std::vector<double>(doc.b.data(), doc.b.data() + doc.b.size());
  j["lambda"] = doc.lambda;
  j["delta"] = doc.delta ? json(*doc.delta) : json(nullptr);
  j["seed"] = doc.seed;
  j["split"] = std::string(to_string(doc.split));
  if (doc.spectrum) {
    j["spectrum"] = {{"lambda_min", doc.spectrum->lambda_min},
                     {"lambda_max", doc.spectrum->lambda_max}};
  }
  return j.dump(1);
}

ProblemDocument problem_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    ProblemDocument doc;
    doc.kind = parse_problem_kind(j.at("kind").get<std::string>());
    const auto& rows = j.at("A");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = n > 0 ? static_cast<Eigen::Index>(rows.at(0).size()) : 0;
    doc.a.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != d) {
        throw DomainError("ragged matrix A in problem document");
      }
      for (Eigen::Index k = 0; k < d; ++k) doc.a(i, k) = rows[i][k].get<double>();
    }
    const auto b = j.at("b").get<std::vector<double>>();
    doc.b = Eigen::Map<const Vector>(b.data(), static_cast<Eigen::Index>(b.size()));
    doc.lambda = j.at("lambda").get<double>();
    if (j.contains("delta") && !j["delta"].is_null()) doc.delta = j["delta"].get<double>();
    doc.seed = j.value("seed", std::uint64_t{0});
    doc.split = parse_elastic_split(j.value("split", std::string("smooth")));
    if (j.contains("spectrum")) {
      doc.spectrum = SpectrumTarget{j["spectrum"].at("lambda_min").get<double>(),
                                    j["spectrum"].at("lambda_max").get<double>()};
    }
    return doc;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed problem document: ") + e.what());
  }
}

void save_problem(const ProblemDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << problem_to_json(doc) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ProblemDocument load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return problem_from_json(ss.str());
}

}  // namespace pgmrate
