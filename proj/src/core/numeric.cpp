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

#include "numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>

#include "error.hpp"

namespace pgmrate {
namespace {

Vector start_vector(Eigen::Index d) {
  // Deterministic, not orthogonal to any coordinate axis.
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + i);
  return v.normalized();
}

}  // namespace

EigenEstimate largest_eigenvalue_ata(const Matrix& a, double tol,
                                     int max_iters) {
  if (a.size() == 0) throw DomainError("empty matrix");
  EigenEstimate est;
  Vector v = start_vector(a.cols());
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = a.transpose() * (a * v);
    const double theta = v.dot(w);
    const double resid = (w - theta * v).norm();
    est.value = theta;
    est.iterations = it;
    if (resid <= tol * std::max(theta, 1e-300)) {
      est.converged = true;
      break;
    }
    const double nw = w.norm();
    if (nw == 0.0) {  // A == 0
      est.value = 0.0;
      est.converged = true;
      break;
    }
    v = w / nw;
  }
  return est;
}

EigenEstimate smallest_eigenvalue_ata(const Matrix& a, double tol,
                                      int max_iters) {
  const EigenEstimate top = largest_eigenvalue_ata(a, tol, max_iters);
  if (top.value == 0.0) return {0.0, 0, true};
  const Eigen::Index d = a.cols();
  const double shift = 1e-10 * top.value;
  Matrix m = a.transpose() * a;
  Matrix shifted = m;
  shifted.diagonal().array() += shift;
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw DomainError("inverse iteration: shifted Gram matrix not factorizable");
  }
  EigenEstimate est;
  Vector v = start_vector(d);
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = llt.solve(v);
    v = w.normalized();
    const Vector mv = m * v;
    const double theta = v.dot(mv);
    const double resid = (mv - theta * v).norm();
    est.value = theta;
    est.iterations = it;
    if (resid <= tol * top.value) {
      est.converged = true;
      break;
    }
  }
  est.value = std::max(est.value, 0.0);
  return est;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double NormalSampler::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned default_thread_count() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pgmrate
