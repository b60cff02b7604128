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

// Exact arithmetic in a real quadratic extension Q(R) of the rationals,
// where R is the positive root of x^2 = u x + v. The default ambient is the
// golden field (u = v = 1).

#ifndef MUBC_EXACT_FIELD_HPP_
#define MUBC_EXACT_FIELD_HPP_

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace mubc {

// Rationals are kept in lowest terms with a positive denominator by GMP.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using BigReal = boost::multiprecision::mpfr_float;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);
std::string rat_to_string(const Rat& r);
// Exact square root when r is the square of a rational.
std::optional<Rat> rat_sqrt(const Rat& r);

// The defining relation R^2 = u R + v. Instances are interned: two ambients
// are the same context iff their addresses agree.
class Ambient {
 public:
  static const Ambient& golden();
  // Throws kDegenerateAmbient when u^2 + 4v is the square of a rational
  // (the extension would not be a field).
  static const Ambient& intern(const Rat& u, const Rat& v);

  const Rat& u() const { return u_; }
  const Rat& v() const { return v_; }
  // u^2 + 4v; the real embedding needs it positive.
  const Rat& discriminant() const { return disc_; }
  bool real_embeddable() const { return disc_ > 0; }

  // R rounded to double (requires a real embedding).
  double root_double() const;

  Ambient(Rat u, Rat v);

 private:
  Rat u_;
  Rat v_;
  Rat disc_;
  double root_ = 0.0;
};

class QuadNum {
 public:
  QuadNum() : QuadNum(Rat(0)) {}
  explicit QuadNum(Rat p, Rat q = Rat(0),
                   const Ambient& ambient = Ambient::golden())
      : p_(std::move(p)), q_(std::move(q)), ambient_(&ambient) {}

  static QuadNum from_int(long value, const Ambient& ambient) {
    return QuadNum(Rat(value), Rat(0), ambient);
  }
  // The generator R itself.
  static QuadNum root(const Ambient& ambient) {
    return QuadNum(Rat(0), Rat(1), ambient);
  }

  const Rat& p() const { return p_; }
  const Rat& q() const { return q_; }
  const Ambient& ambient() const { return *ambient_; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_rational() const { return q_ == 0; }

  friend bool same_context(const QuadNum& a, const QuadNum& b) {
    return a.ambient_ == b.ambient_;
  }

 private:
  Rat p_;
  Rat q_;
  const Ambient* ambient_;
};

QuadNum quad_add(const QuadNum& x, const QuadNum& y);
QuadNum quad_sub(const QuadNum& x, const QuadNum& y);
QuadNum quad_neg(const QuadNum& x);
QuadNum quad_mul(const QuadNum& x, const QuadNum& y);
QuadNum quad_inv(const QuadNum& x);
// Galois conjugate: R -> u - R.
QuadNum quad_conj(const QuadNum& x);
// x * conj(x), always rational.
Rat quad_norm(const QuadNum& x);
BigReal quad_embed(const QuadNum& x, unsigned digits);
int quad_sign(const QuadNum& x);
// Square root inside the field, when it exists.
std::optional<QuadNum> quad_sqrt(const QuadNum& x);
double quad_to_double(const QuadNum& x);

inline QuadNum operator+(const QuadNum& x, const QuadNum& y) { return quad_add(x, y); }
inline QuadNum operator-(const QuadNum& x, const QuadNum& y) { return quad_sub(x, y); }
inline QuadNum operator-(const QuadNum& x) { return quad_neg(x); }
inline QuadNum operator*(const QuadNum& x, const QuadNum& y) { return quad_mul(x, y); }
inline QuadNum operator/(const QuadNum& x, const QuadNum& y) {
  return quad_mul(x, quad_inv(y));
}
inline QuadNum& operator+=(QuadNum& x, const QuadNum& y) { return x = x + y; }
inline QuadNum& operator-=(QuadNum& x, const QuadNum& y) { return x = x - y; }
inline QuadNum& operator*=(QuadNum& x, const QuadNum& y) { return x = x * y; }
// Exact equality; throws kContextMismatch across ambients.
bool operator==(const QuadNum& x, const QuadNum& y);
inline bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }
// Order under the real embedding, decided exactly.
inline bool operator<(const QuadNum& x, const QuadNum& y) {
  return quad_sign(x - y) < 0;
}

// "p + q R" with p, q written as n or n/d. The parser also accepts
// "p - q R", "q R", "R", "-R", "p", and an optional '*' before R.
std::string quad_to_string(const QuadNum& x);
QuadNum parse_quad(std::string_view text,
                   const Ambient& ambient = Ambient::golden());

std::ostream& operator<<(std::ostream& os, const QuadNum& x);

}  // namespace mubc

#endif  // MUBC_EXACT_FIELD_HPP_
