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

#include "interp.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "pgm.hpp"
#include "problem.hpp"

namespace pgmrate {

double cond_A(const Triple& i, const Triple& j, double L) {
  const Vector dx = i.x - j.x;
  return j.fv - i.fv - 0.25 * L * dx.squaredNorm() + 0.5 * (i.g + j.g).dot(dx) +
         (i.g - j.g).squaredNorm() / (4.0 * L);
}

double cond_B(const Triple& i, const Triple& j, double L) {
  return j.fv - i.fv + j.g.dot(i.x - j.x) + (i.g - j.g).squaredNorm() / (2.0 * L);
}

double cond_C(const Triple& i, const Triple& j) {
  return j.fv - i.fv + j.g.dot(i.x - j.x);
}

double cond_D(const Triple& f_part, const Triple& h_part, double fstar, double mu) {
  return f_part.fv + h_part.fv - fstar - (f_part.g + h_part.g).squaredNorm() / (2.0 * mu);
}

double cond_E(double f, double h, double fstar, double mu, double residual_norm) {
  return f + h - fstar - residual_norm * residual_norm / (2.0 * mu);
}

double cond_E_prime(double f, double h, const Vector& g, const Vector& s_next,
                    double fstar, double mu) {
  return f + h - fstar - (g + s_next).squaredNorm() / (2.0 * mu);
}

TraceValidation validate_trace(const CompositeProblem& problem, const Trace& trace,
                               double fstar, double mu) {
  TraceValidation v;
  const double gamma = trace.step;
  const auto& its = trace.iterates;
  const bool slacks = mu > 0.0;
  for (std::size_t i = 0; i < its.size(); ++i) {
    const auto& rec = its[i];
    // s_i certified at x_i: carried from the previous step, fresh at x_1.
    const Vector s_here = (i == 0) ? problem.h.subgradient(rec.x) : its[i - 1].s_next;
    if (i > 0 && s_here.size() == 0) {
      throw DomainError("trace was recorded without subgradients");
    }
    const Vector g_here = problem.f.gradient(rec.x);
    v.max_residual_vs_subgradient = std::max(
        v.max_residual_vs_subgradient, rec.residual_norm - (g_here + s_here).norm());

    const bool stepped = i + 1 < its.size();
    if (stepped) {
      if (rec.g.size() == 0) throw DomainError("trace was recorded without subgradients");
      const Vector& next = its[i + 1].x;
      const double scale = 1.0 + rec.x.norm();
      v.max_step_identity_error =
          std::max(v.max_step_identity_error,
                   std::abs(gamma * rec.residual_norm - (rec.x - next).norm()) / scale);
      v.max_update_identity_error = std::max(
          v.max_update_identity_error,
          (next - (rec.x - gamma * (rec.g + rec.s_next))).norm() / scale);
    }

    if (!slacks) continue;
    if (i > 0 &&
        rec.objective > its[i - 1].objective + significance_floor(its[i - 1].objective)) {
      v.skipped_points.push_back(static_cast<int>(i + 1));
      continue;
    }
    ++v.checked_points;
    const Triple f_part{rec.x, g_here, rec.f};
    const Triple h_part{rec.x, s_here, rec.h};
    v.max_d = std::max(v.max_d, cond_D(f_part, h_part, fstar, mu));
    const double e = cond_E(rec.f, rec.h, fstar, mu, rec.residual_norm);
    v.max_e = std::max(v.max_e, e);
    if (stepped) {
      const double ep = cond_E_prime(rec.f, rec.h, rec.g, rec.s_next, fstar, mu);
      v.max_e_vs_eprime = std::max(v.max_e_vs_eprime, std::abs(e - ep));
    }
  }
  return v;
}

}  // namespace pgmrate
