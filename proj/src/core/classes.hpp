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

#include <string>
#include <string_view>

#include "error.hpp"

namespace pgmrate {

/// Class of the smooth part f: L-smooth convex, or merely L-smooth.
enum class FnClass { convex, nonconvex };

/// Which error bound the composite objective is assumed to satisfy:
/// PL bounds the gap by the subdifferential distance, RPL by the proximal
/// residual ‖G_γ(x)‖.
enum class Inequality { pl, rpl };

inline std::string_view to_string(FnClass c) noexcept {
  return c == FnClass::convex ? "convex" : "nonconvex";
}

inline std::string_view to_string(Inequality i) noexcept {
  return i == Inequality::pl ? "pl" : "rpl";
}

inline FnClass parse_fn_class(std::string_view s) {
  if (s == "convex") return FnClass::convex;
  if (s == "nonconvex") return FnClass::nonconvex;
  throw UsageError("unknown function class '" + std::string(s) + "'");
}

inline Inequality parse_inequality(std::string_view s) {
  if (s == "pl") return Inequality::pl;
  if (s == "rpl") return Inequality::rpl;
  throw UsageError("unknown inequality '" + std::string(s) + "'");
}

}  // namespace pgmrate
