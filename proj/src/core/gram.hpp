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

// Quadratic expressions over a fixed symbolic basis for one PGM step.
//
// Vector symbols: x₁ − x_*, g₁, g₂, s₂. The second iterate is not a symbol;
// it is eliminated through x₂ = x₁ − γ(g₁ + s₂).
// Scalar symbols: f₁, f₂, h₁, h₂, F_*.
//
// An expression is ⟨Q, G⟩ + cᵀφ + k where G is the Gram matrix of the vector
// symbols and φ the scalar symbols.

#pragma once

#include <array>
#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgmrate {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kVectorSymbols = 4;
inline constexpr std::size_t kScalarSymbols = 5;

enum class VecSym : std::size_t { x1_minus_xstar = 0, g1 = 1, g2 = 2, s2 = 3 };
enum class ScalarSym : std::size_t { f1 = 0, f2 = 1, h1 = 2, h2 = 3, fstar = 4 };

inline constexpr std::array<const char*, kVectorSymbols> kVectorSymbolNames{
    "x1-x*", "g1", "g2", "s2"};
inline constexpr std::array<const char*, kScalarSymbols> kScalarSymbolNames{
    "f1", "f2", "h1", "h2", "F*"};

/// Linear combination of vector symbols.
template <class T>
struct LinearVec {
  std::array<T, kVectorSymbols> c{};

  static LinearVec unit(VecSym s) {
    LinearVec v;
    v.c[static_cast<std::size_t>(s)] = T(1);
    return v;
  }

  friend LinearVec operator+(LinearVec a, const LinearVec& b) {
    for (std::size_t i = 0; i < kVectorSymbols; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend LinearVec operator-(LinearVec a, const LinearVec& b) {
    for (std::size_t i = 0; i < kVectorSymbols; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend LinearVec operator*(const T& s, LinearVec a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
};

template <class T>
struct GramExpression {
  std::array<std::array<T, kVectorSymbols>, kVectorSymbols> q{};
  std::array<T, kScalarSymbols> c{};
  T k{};

  /// ⟨a, b⟩, stored symmetrically.
  static GramExpression inner(const LinearVec<T>& a, const LinearVec<T>& b) {
    GramExpression e;
    const T half = T(1) / T(2);
    for (std::size_t i = 0; i < kVectorSymbols; ++i)
      for (std::size_t j = 0; j < kVectorSymbols; ++j)
        e.q[i][j] = half * (a.c[i] * b.c[j] + a.c[j] * b.c[i]);
    return e;
  }

  static GramExpression sq_norm(const LinearVec<T>& a) { return inner(a, a); }

  static GramExpression scalar(ScalarSym s, const T& coef = T(1)) {
    GramExpression e;
    e.c[static_cast<std::size_t>(s)] = coef;
    return e;
  }

  GramExpression& operator+=(const GramExpression& o) {
    for (std::size_t i = 0; i < kVectorSymbols; ++i)
      for (std::size_t j = 0; j < kVectorSymbols; ++j) q[i][j] += o.q[i][j];
    for (std::size_t i = 0; i < kScalarSymbols; ++i) c[i] += o.c[i];
    k += o.k;
    return *this;
  }
  GramExpression& operator-=(const GramExpression& o) {
    for (std::size_t i = 0; i < kVectorSymbols; ++i)
      for (std::size_t j = 0; j < kVectorSymbols; ++j) q[i][j] -= o.q[i][j];
    for (std::size_t i = 0; i < kScalarSymbols; ++i) c[i] -= o.c[i];
    k -= o.k;
    return *this;
  }
  GramExpression& operator*=(const T& s) {
    for (auto& row : q)
      for (auto& v : row) v *= s;
    for (auto& v : c) v *= s;
    k *= s;
    return *this;
  }

  friend GramExpression operator+(GramExpression a, const GramExpression& b) { return a += b; }
  friend GramExpression operator-(GramExpression a, const GramExpression& b) { return a -= b; }
  friend GramExpression operator*(const T& s, GramExpression a) { return a *= s; }

  /// Applies `fn` to every coefficient (Q entries, c, k).
  template <class Fn>
  void for_each_coefficient(Fn&& fn) const {
    for (const auto& row : q)
      for (const auto& v : row) fn(v);
    for (const auto& v : c) fn(v);
    fn(k);
  }

  /// ⟨Q, G⟩ + cᵀφ + k.
  template <class GramLike, class ScalarLike>
  T evaluate(const GramLike& gram, const ScalarLike& scalars) const {
    T acc = k;
    for (std::size_t i = 0; i < kVectorSymbols; ++i)
      for (std::size_t j = 0; j < kVectorSymbols; ++j) acc += q[i][j] * gram(i, j);
    for (std::size_t i = 0; i < kScalarSymbols; ++i) acc += c[i] * scalars[i];
    return acc;
  }
};

}  // namespace pgmrate
