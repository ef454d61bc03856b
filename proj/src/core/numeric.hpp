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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include <Eigen/Core>

namespace pgmrate {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct EigenEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of AᵀA by power iteration, matrix-free. Stops when the
/// eigen-residual ‖AᵀAv − θv‖ falls below tol·θ.
EigenEstimate largest_eigenvalue_ata(const Matrix& a, double tol = 1e-10,
                                     int max_iters = 10'000);

/// Smallest eigenvalue of AᵀA by inverse iteration on AᵀA + εI with
/// ε = 1e-10·λ_max, reported as a Rayleigh quotient of AᵀA.
EigenEstimate smallest_eigenvalue_ata(const Matrix& a, double tol = 1e-10,
                                      int max_iters = 10'000);

/// splitmix64 finalizer; used to derive per-task seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) noexcept;

/// Standard normal draws from mt19937_64 through the Box–Muller transform.
/// Unlike std::normal_distribution the stream is identical across standard
/// library implementations.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()();
  double uniform();  // in (0, 1)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// 17 significant digits, shortest round-trippable formatting is not required.
std::string format_double(double v);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once; callers write results into preallocated slots.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

unsigned default_thread_count() noexcept;

}  // namespace pgmrate
