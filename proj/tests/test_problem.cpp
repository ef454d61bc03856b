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
#include <filesystem>
#include <random>

#include "problem.hpp"
#include "support.hpp"

using namespace pgmrate;
namespace ts = testing_support;

TEST_CASE("least squares oracle on the identity") {
  const SmoothOracle f = least_squares_oracle(Matrix::Identity(2, 2), Vector::Zero(2));
  const Vector x = Vector::Ones(2);
  CHECK(f.value(x) == doctest::Approx(1.0));
  CHECK((f.gradient(x) - Vector::Ones(2)).norm() == doctest::Approx(0.0));
  CHECK(f.lipschitz() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.fn_class() == FnClass::convex);
}

TEST_CASE("least squares Lipschitz constant of a scalar matrix") {
  Matrix a(1, 1);
  a << 2.0;
  CHECK(least_squares_oracle(a, Vector::Zero(1)).lipschitz() ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Lipschitz and strong convexity constants match a dense eigensolve") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Matrix a = ts::gaussian_matrix(200, 20, seed);
    const Vector eig = ts::ata_eigenvalues(a);
    const double lmax = eig[eig.size() - 1];
    const double lmin = eig[0];
    const SmoothOracle ls = least_squares_oracle(a, Vector::Zero(200));
    CHECK(std::abs(ls.lipschitz() - lmax) <= 1e-8 * lmax);
    const SmoothOracle rl = robust_log_oracle(a, Vector::Zero(200));
    CHECK(std::abs(rl.lipschitz() - 2.0 * lmax) <= 2e-8 * lmax);
    CHECK(std::abs(largest_eigenvalue_ata(a).value - lmax) <= 1e-8 * lmax);
    CHECK(std::abs(smallest_eigenvalue_ata(a).value - lmin) <= 1e-8 * lmax);
  }
}

TEST_CASE("elastic net mu equals lambda_min(A^T A) + delta") {
  for (double delta : {0.01, 100.0}) {
    const ProblemDocument doc =
        generate_problem(ProblemKind::elastic_net, 200, 20, 0.1, delta, 7);
    const CompositeProblem p = make_problem(doc);
    REQUIRE(p.mu.has_value());
    const Vector eig = ts::ata_eigenvalues(doc.a);
    CHECK(std::abs(p.mu->value - (eig[0] + delta)) <= 1e-8);
    CHECK(p.mu->ineq == Inequality::rpl);
    CHECK(std::abs(p.f.lipschitz() - (eig[eig.size() - 1] + delta)) <=
          1e-8 * eig[eig.size() - 1]);
  }
}

TEST_CASE("robust log oracle closed forms") {
  Matrix a(1, 1);
  a << 1.0;
  const SmoothOracle f = robust_log_oracle(a, Vector::Zero(1));
  Vector x(1);
  x << 0.0;
  CHECK(f.value(x) == 0.0);
  CHECK(f.gradient(x)[0] == 0.0);
  x << 1.0;
  CHECK(f.value(x) == doctest::Approx(std::log(2.0)));
  CHECK(f.gradient(x)[0] == doctest::Approx(1.0));
  CHECK(f.fn_class() == FnClass::nonconvex);
  CHECK(f.lipschitz() == doctest::Approx(2.0));
}

TEST_CASE("oracle gradients agree with central differences") {
  std::mt19937 gen(11);
  const Matrix a = ts::gaussian_matrix(200, 20, 5);
  const Vector b = ts::gaussian_vector(200, gen);
  const std::vector<SmoothOracle> oracles = {
      least_squares_oracle(a, b), ridge_least_squares_oracle(a, b, 0.5),
      robust_log_oracle(a, b), quadratic_oracle(20, 3.0)};
  for (const auto& f : oracles) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vector x = ts::gaussian_vector(20, gen);
      const Vector g = f.gradient(x);
      const Vector fd = ts::fd_gradient([&](const Vector& y) { return f.value(y); }, x);
      worst = std::max(worst, (fd - g).norm() / std::max(1.0, g.norm()));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("oracle gradients are L-Lipschitz on sampled pairs") {
  std::mt19937 gen(12);
  const Matrix a = ts::gaussian_matrix(50, 8, 9);
  const Vector b = ts::gaussian_vector(50, gen);
  for (const auto& f : {least_squares_oracle(a, b), robust_log_oracle(a, b)}) {
    for (int k = 0; k < 200; ++k) {
      const Vector x = ts::gaussian_vector(8, gen, 3.0);
      const Vector y = ts::gaussian_vector(8, gen, 3.0);
      CHECK((f.gradient(x) - f.gradient(y)).norm() <=
            f.lipschitz() * (x - y).norm() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("oracles reject mismatched or degenerate data") {
  CHECK_THROWS_AS(least_squares_oracle(Matrix::Ones(3, 2), Vector::Zero(2)), DomainError);
  CHECK_THROWS_AS(robust_log_oracle(Matrix::Zero(3, 2), Vector::Zero(3)), DomainError);
  CHECK_THROWS_AS(l1_prox(0.0), DomainError);
  CHECK_THROWS_AS(elastic_net_prox(1.0, -1.0), DomainError);
}

TEST_CASE("soft threshold closed forms") {
  Vector x(2);
  x << 3.0, -0.5;
  const Vector y = l1_prox(1.0).prox(x, 1.0);
  CHECK(y[0] == 2.0);
  CHECK(y[1] == 0.0);
  CHECK(l1_prox(0.3).prox(Vector::Zero(4), 2.0).isZero(0.0));
  Vector z(3);
  z << -4.0, 0.25, 1.0;
  const Vector st = soft_threshold(z, 0.5);
  CHECK(st[0] == -3.5);
  CHECK(st[1] == 0.0);
  CHECK(st[2] == 0.5);
}

TEST_CASE("elastic net prox closed forms") {
  Vector x(1);
  x << 3.0;
  CHECK(elastic_net_prox(1.0, 1.0).prox(x, 1.0)[0] == doctest::Approx(1.0));
  CHECK(elastic_net_prox(1.0, 1.0).prox(Vector::Zero(3), 0.7).isZero(0.0));
}

TEST_CASE("elastic net prox agrees with scalar brute-force minimization") {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.05, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double x = u(gen), lambda = pos(gen), delta = pos(gen), gamma = pos(gen);
    const auto phi = [&](double y) {
      return lambda * std::abs(y) + 0.5 * delta * y * y + (y - x) * (y - x) / (2.0 * gamma);
    };
    const double ref = ts::minimize_scalar(phi, -std::abs(x) - 1.0, std::abs(x) + 1.0);
    Vector xv(1);
    xv << x;
    CHECK(std::abs(elastic_net_prox(lambda, delta).prox(xv, gamma)[0] - ref) <= 1e-6);
  }
}

TEST_CASE("prox output satisfies the subgradient inequality") {
  std::mt19937 gen(31);
  for (const auto& h : {l1_prox(0.4), elastic_net_prox(0.4, 2.0)}) {
    for (int k = 0; k < 1000; ++k) {
      const Vector x = ts::gaussian_vector(6, gen, 2.0);
      const Vector z = ts::gaussian_vector(6, gen, 2.0);
      const double gamma = 0.1 + std::abs(ts::gaussian_vector(1, gen)[0]);
      const Vector y = h.prox(x, gamma);
      const Vector s = h.subgradient_at_prox(x, gamma);
      CHECK((s - (x - y) / gamma).norm() <= 1e-12 * (1.0 + s.norm()));
      CHECK(h.value(z) >= h.value(y) + s.dot(z - y) - 1e-12 * (1.0 + std::abs(h.value(z))));
    }
  }
}

TEST_CASE("prox operators are nonexpansive and the zero prox is the identity") {
  std::mt19937 gen(41);
  for (const auto& h : {l1_prox(1.0), elastic_net_prox(0.5, 0.5), zero_prox()}) {
    for (int k = 0; k < 300; ++k) {
      const Vector x = ts::gaussian_vector(5, gen, 2.0);
      const Vector y = ts::gaussian_vector(5, gen, 2.0);
      CHECK((h.prox(x, 0.8) - h.prox(y, 0.8)).norm() <= (x - y).norm() * (1.0 + 1e-14));
    }
  }
  const Vector x = ts::gaussian_vector(5, gen);
  CHECK(zero_prox().prox(x, 3.0) == x);
  CHECK(zero_prox().value(x) == 0.0);
}

TEST_CASE("fresh-point l1 subgradient uses the sign rule") {
  Vector x(3);
  x << -2.0, 0.0, 5.0;
  const Vector s = l1_prox(0.5).subgradient(x);
  CHECK(s[0] == -0.5);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.5);
}

TEST_CASE("generation is reproducible per seed and differs across seeds") {
  const ProblemDocument a = generate_problem(ProblemKind::lasso, 30, 5, 0.1, {}, 3);
  const ProblemDocument b = generate_problem(ProblemKind::lasso, 30, 5, 0.1, {}, 3);
  const ProblemDocument c = generate_problem(ProblemKind::lasso, 30, 5, 0.1, {}, 4);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(a.a != c.a);
}

TEST_CASE("generation validates its arguments") {
  CHECK_THROWS_AS(generate_problem(ProblemKind::lasso, 0, 5, 0.1, {}, 1), DomainError);
  CHECK_THROWS_AS(generate_problem(ProblemKind::lasso, 5, 5, 0.1, 1.0, 1), DomainError);
  CHECK_THROWS_AS(generate_problem(ProblemKind::elastic_net, 5, 5, 0.1, {}, 1), DomainError);
  CHECK_THROWS_AS(parse_problem_kind("ridge"), UsageError);
}

TEST_CASE("spectrum targets set the extreme eigenvalues") {
  const ProblemDocument doc = generate_problem(ProblemKind::elastic_net, 200, 20, 0.1, 100.0,
                                               5, SpectrumTarget{0.0, 455.0});
  const Vector eig = ts::ata_eigenvalues(doc.a);
  CHECK(std::abs(eig[0]) <= 1e-9 * 455.0);
  CHECK(eig[eig.size() - 1] == doctest::Approx(455.0).epsilon(1e-10));
}

TEST_CASE("problem documents round-trip through JSON") {
  ProblemDocument doc = generate_problem(ProblemKind::elastic_net, 12, 4, 0.25, 0.5, 99, {},
                                         ElasticSplit::prox);
  const ProblemDocument back = problem_from_json(problem_to_json(doc));
  CHECK(back.kind == doc.kind);
  CHECK(back.a == doc.a);
  CHECK(back.b == doc.b);
  CHECK(back.lambda == doc.lambda);
  CHECK(back.delta == doc.delta);
  CHECK(back.seed == doc.seed);
  CHECK(back.split == doc.split);

  const auto path = std::filesystem::temp_directory_path() / "pgmrate_problem_roundtrip.json";
  save_problem(doc, path);
  CHECK(load_problem(path).a == doc.a);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(problem_from_json("{not json"), UsageError);
  CHECK_THROWS_AS(load_problem("/nonexistent/dir/p.json"), IoError);
}

TEST_CASE("composite objective is bounded below by a known optimal value") {
  const ProblemDocument doc = generate_problem(ProblemKind::lasso, 40, 6, 0.1, {}, 2);
  const CompositeProblem p = make_problem(doc);
  std::mt19937 gen(3);
  for (int k = 0; k < 200; ++k) CHECK(p.value(ts::gaussian_vector(6, gen, 3.0)) >= 0.0);
}
