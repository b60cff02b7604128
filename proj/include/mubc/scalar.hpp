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

// Uniform scalar vocabulary for the two computation modes: exact (QuadNum)
// and numeric (double). Generic code only touches scalars through these.

#ifndef MUBC_SCALAR_HPP_
#define MUBC_SCALAR_HPP_

#include <cmath>
#include <concepts>
#include <cstdio>
#include <optional>
#include <string>

#include "mubc/error.hpp"
#include "mubc/exact_field.hpp"

namespace mubc {

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, QuadNum>;

template <Scalar T>
inline constexpr bool kIsExact = std::same_as<T, QuadNum>;

inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const QuadNum& x) { return quad_sign(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const QuadNum& x) { return x.is_zero(); }

inline double to_real(double x) { return x; }
inline double to_real(const QuadNum& x) { return quad_to_double(x); }

inline double abs_of(double x) { return std::fabs(x); }
inline QuadNum abs_of(const QuadNum& x) { return quad_sign(x) < 0 ? -x : x; }

inline double from_int(const double&, long value) { return static_cast<double>(value); }
inline QuadNum from_int(const QuadNum& like, long value) {
  return QuadNum::from_int(value, like.ambient());
}

template <Scalar T>
T zero_like(const T& like) { return from_int(like, 0); }
template <Scalar T>
T one_like(const T& like) { return from_int(like, 1); }

inline void check_same_context(double, double) {}
inline void check_same_context(const QuadNum& a, const QuadNum& b) {
  if (!same_context(a, b)) {
    fail(ErrorCode::kContextMismatch, "scalars live in different quadratic fields");
  }
}

inline std::optional<double> sqrt_of(double x) {
  if (x < 0) return std::nullopt;
  return std::sqrt(x);
}
inline std::optional<QuadNum> sqrt_of(const QuadNum& x) { return quad_sqrt(x); }

inline double reciprocal(double x) {
  if (x == 0.0) fail(ErrorCode::kDivisionByZero, "reciprocal of zero");
  return 1.0 / x;
}
inline QuadNum reciprocal(const QuadNum& x) { return quad_inv(x); }

inline std::string scalar_to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
inline std::string scalar_to_string(const QuadNum& x) { return quad_to_string(x); }

// Row-pivot preference for elimination: exact mode takes any non-zero pivot,
// numeric mode prefers the largest magnitude.
inline double pivot_weight(double x) { return std::fabs(x); }
inline double pivot_weight(const QuadNum& x) { return x.is_zero() ? 0.0 : 1.0; }

}  // namespace mubc

#endif  // MUBC_SCALAR_HPP_
