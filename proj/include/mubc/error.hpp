// Copyright 2026 The mubc Authors
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

#ifndef MUBC_ERROR_HPP_
#define MUBC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mubc {

enum class ErrorCode {
  kContextMismatch,
  kDivisionByZero,
  kNotRealEmbeddable,
  kDegenerateAmbient,
  kDimensionMismatch,
  kLimitExceeded,
  kParallelDirections,
  kInvalidTarget,
  kInvalidDirection,
  kSpecialDirection,
  kSingularCayley,
  kDegenerateBlock,
  kNonInvertible,
  kNotSymplectic,
  kPreconditionFailed,
  kInvalidProblem,
  kNotRepresentable,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception; the code lets
// callers (notably the CLI) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContextMismatch: return "ContextMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNotRealEmbeddable: return "NotRealEmbeddable";
    case ErrorCode::kDegenerateAmbient: return "DegenerateAmbient";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLimitExceeded: return "LimitExceeded";
    case ErrorCode::kParallelDirections: return "ParallelDirections";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kInvalidDirection: return "InvalidDirection";
    case ErrorCode::kSpecialDirection: return "SpecialDirection";
    case ErrorCode::kSingularCayley: return "SingularCayley";
    case ErrorCode::kDegenerateBlock: return "DegenerateBlock";
    case ErrorCode::kNonInvertible: return "NonInvertible";
    case ErrorCode::kNotSymplectic: return "NotSymplectic";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kInvalidProblem: return "InvalidProblem";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace mubc

#endif  // MUBC_ERROR_HPP_
