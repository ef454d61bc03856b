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

#include "rates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "error.hpp"
#include "numeric.hpp"

namespace pgmrate {
namespace {

void check_constants(double L, double mu) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

void check_step(double L, double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0 / L)) throw DomainError("gamma out of (0, 2/L)");
}

// Shared long-step piece (Lγ−1)²/((Lγ−1)² − Lγ²μ + 2γμ).
double long_step_piece(double L, double mu, double g) {
  const double t = (L * g - 1.0) * (L * g - 1.0);
  return t / (t - L * g * g * mu + 2.0 * g * mu);
}

double short_nonconvex_pl_piece(double L, double mu, double g) {
  const double t = (L * g + 1.0) * (L * g + 1.0);
  return t / (t + L * g * g * mu + 2.0 * g * mu);
}

double short_convex_pl_piece(double mu, double g) { return 1.0 / (2.0 * g * mu + 1.0); }

double short_convex_rpl_piece(double mu, double g) {
  return (1.0 - g * mu) / (1.0 + g * mu);
}

double middle_convex_rpl_piece(double L, double mu, double g) {
  return (-2.0 * L * g * g * mu + L * g + 3.0 * g * mu - 2.0) /
         (L * g - g * mu - 2.0);
}

double nonconvex_rpl_piece(double L, double mu, double g) {
  return (L + mu * (L * g - 1.0) * (L * g - 1.0) - mu) / L;
}

}  // namespace

RateResult rate_formula(const RateQuery& q) {
  check_constants(q.L, q.mu);
  check_step(q.L, q.gamma);
  const double L = q.L, mu = q.mu, g = q.gamma;
  if (q.fn_class == FnClass::convex && q.ineq == Inequality::pl) {
    if (g <= 1.5 / L) return {short_convex_pl_piece(mu, g), "convex-pl:1"};
    return {long_step_piece(L, mu, g), "convex-pl:2"};
  }
  if (q.fn_class == FnClass::nonconvex && q.ineq == Inequality::pl) {
    if (g <= std::sqrt(3.0) / L) return {short_nonconvex_pl_piece(L, mu, g), "nonconvex-pl:1"};
    return {long_step_piece(L, mu, g), "nonconvex-pl:2"};
  }
  if (q.fn_class == FnClass::nonconvex) {
    return {nonconvex_rpl_piece(L, mu, g), "nonconvex-rpl"};
  }
  if (g <= 1.0 / L) return {short_convex_rpl_piece(mu, g), "convex-rpl:1"};
  if (g <= 1.5 / L) return {middle_convex_rpl_piece(L, mu, g), "convex-rpl:2"};
  return {long_step_piece(L, mu, g), "convex-rpl:3"};
}

RateResult rate(const RateQuery& q) {
  check_constants(q.L, q.mu);
  const bool needs_mu_le_L = q.fn_class == FnClass::convex || q.ineq == Inequality::rpl;
  if (needs_mu_le_L && q.mu > q.L) throw DomainError("mu must not exceed L");
  return rate_formula(q);
}

double rate_max_form(const RateQuery& q) {
  check_constants(q.L, q.mu);
  check_step(q.L, q.gamma);
  const double L = q.L, mu = q.mu, g = q.gamma;
  if (q.fn_class == FnClass::convex && q.ineq == Inequality::pl) {
    return std::max(short_convex_pl_piece(mu, g), long_step_piece(L, mu, g));
  }
  if (q.fn_class == FnClass::nonconvex && q.ineq == Inequality::pl) {
    return std::max(short_nonconvex_pl_piece(L, mu, g), long_step_piece(L, mu, g));
  }
  if (q.fn_class == FnClass::nonconvex) return nonconvex_rpl_piece(L, mu, g);
  return std::max({short_convex_rpl_piece(mu, g), middle_convex_rpl_piece(L, mu, g),
                   long_step_piece(L, mu, g)});
}

double rpl_interior_step(double L, double mu) {
  check_constants(L, mu);
  return 2.0 / (std::sqrt(L) * (std::sqrt(L) + std::sqrt(mu)));
}

OptimalStep optimal_step(FnClass fn_class, Inequality ineq, double L, double mu) {
  check_constants(L, mu);
  double gamma = 0.0;
  if (fn_class == FnClass::nonconvex && ineq == Inequality::pl) {
    gamma = std::sqrt(3.0) / L;
  } else if (fn_class == FnClass::convex && ineq == Inequality::pl) {
    gamma = 1.5 / L;
  } else if (fn_class == FnClass::nonconvex) {
    gamma = 1.0 / L;
  } else {
    if (!(mu < L)) throw DomainError("convex/rpl optimal step requires mu < L");
    gamma = (mu <= L / 9.0) ? 1.5 / L : rpl_interior_step(L, mu);
  }
  const RateResult r = rate({fn_class, ineq, L, mu, gamma});
  return {gamma, r.rho, r.branch};
}

double baseline_garrigos(double L, double mu, double gamma) {
  check_constants(L, mu);
  check_step(L, gamma);
  return 1.0 / (1.0 + gamma * mu * (2.0 - gamma * L));
}

double baseline_zhang(double L, double mu, double gamma) {
  check_constants(L, mu);
  if (!(gamma > 0.0 && gamma <= 1.0 / L)) throw DomainError("gamma out of (0, 1/L]");
  return (1.0 - gamma * mu) / (1.0 + gamma * mu);
}

std::vector<RateCurveRow> rate_curve(FnClass fn_class, Inequality ineq, double L,
                                     double mu, const std::vector<double>& gammas) {
  std::vector<RateCurveRow> rows;
  rows.reserve(gammas.size());
  for (double g : gammas) {
    const RateResult r = rate({fn_class, ineq, L, mu, g});
    RateCurveRow row{g, r.rho, r.branch, baseline_garrigos(L, mu, g), {}};
    if (g <= 1.0 / L) row.zhang = baseline_zhang(L, mu, g);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> open_grid(double a, double b, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) out.push_back(a + (b - a) * k / (n + 1.0));
  return out;
}

void write_rate_curve_csv(const std::vector<RateCurveRow>& rows, std::ostream& out) {
  out << "gamma,rate,branch,baseline_garrigos,baseline_zhang\n";
  for (const auto& r : rows) {
    out << format_double(r.gamma) << ',' << format_double(r.rate) << ',' << r.branch
        << ',' << format_double(r.garrigos) << ',';
    if (r.zhang) out << format_double(*r.zhang);
    out << '\n';
  }
}

void write_rate_curve_csv(const std::vector<RateCurveRow>& rows,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_rate_curve_csv(rows, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pgmrate
