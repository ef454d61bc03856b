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

#include <stdexcept>
#include <string>

namespace pgmrate {

/// Coarse failure category. The numeric values double as CLI exit codes.
enum class ErrorCategory : int {
  usage = 2,
  domain = 3,
  verification = 4,
  io = 5,
};

const char* to_string(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Bad parameters: step outside (0, 2/L), non-positive constants, mismatched
/// dimensions, non-finite iterates.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::domain, what) {}
};

/// A certificate or search result failed its check.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(ErrorCategory::verification, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(ErrorCategory::usage, what) {}
};

inline const char* to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::usage:
      return "usage";
    case ErrorCategory::domain:
      return "domain";
    case ErrorCategory::verification:
      return "verification";
    case ErrorCategory::io:
      return "io";
  }
  return "unknown";
}

}  // namespace pgmrate
