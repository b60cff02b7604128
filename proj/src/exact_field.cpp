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

#include "mubc/exact_field.hpp"

#include <cctype>
#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>

#include "mubc/error.hpp"

namespace mubc {

namespace mp = boost::multiprecision;

Rat make_rat(long num, long den) {
  if (den == 0) fail(ErrorCode::kDivisionByZero, "rational with zero denominator");
  return Rat(num) / Rat(den);
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) fail(ErrorCode::kParseError, "empty rational");
  auto parse_int = [](std::string t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (t.size() == start) fail(ErrorCode::kParseError, "missing digits in '" + t + "'");
    for (std::size_t i = start; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
        fail(ErrorCode::kParseError, "not an integer: '" + t + "'");
      }
    }
    if (t[0] == '+') t.erase(t.begin());
    return BigInt(t);
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::kDivisionByZero, "rational with zero denominator");
  return Rat(parse_int(s.substr(0, slash))) / Rat(den);
}

std::string rat_to_string(const Rat& r) {
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);
  const BigInt sn = mp::sqrt(num);
  const BigInt sd = mp::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rat(sn) / Rat(sd);
}

Ambient::Ambient(Rat u, Rat v)
    : u_(std::move(u)), v_(std::move(v)), disc_(u_ * u_ + 4 * v_) {
  if (rat_sqrt(disc_)) {
    fail(ErrorCode::kDegenerateAmbient,
         "x^2 = ux + v has rational roots (discriminant " + rat_to_string(disc_) + ")");
  }
  if (real_embeddable()) {
    root_ = (u_.convert_to<double>() + std::sqrt(disc_.convert_to<double>())) / 2.0;
  }
}

double Ambient::root_double() const {
  if (!real_embeddable()) fail(ErrorCode::kNotRealEmbeddable, "u^2 + 4v <= 0");
  return root_;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::deque<Ambient>& registry() {
  static std::deque<Ambient> r;
  return r;
}

void check_context(const QuadNum& x, const QuadNum& y) {
  if (!same_context(x, y)) {
    fail(ErrorCode::kContextMismatch, "operands live in different quadratic fields");
  }
}

}  // namespace

const Ambient& Ambient::golden() {
  static const Ambient& g = intern(Rat(1), Rat(1));
  return g;
}

const Ambient& Ambient::intern(const Rat& u, const Rat& v) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (const Ambient& a : registry()) {
    if (a.u_ == u && a.v_ == v) return a;
  }
  registry().emplace_back(u, v);
  return registry().back();
}

QuadNum quad_add(const QuadNum& x, const QuadNum& y) {
  check_context(x, y);
  return QuadNum(x.p() + y.p(), x.q() + y.q(), x.ambient());
}

QuadNum quad_sub(const QuadNum& x, const QuadNum& y) {
  check_context(x, y);
  return QuadNum(x.p() - y.p(), x.q() - y.q(), x.ambient());
}

QuadNum quad_neg(const QuadNum& x) {
  return QuadNum(-x.p(), -x.q(), x.ambient());
}

QuadNum quad_mul(const QuadNum& x, const QuadNum& y) {
  check_context(x, y);
  const Ambient& a = x.ambient();
  // (p1 + q1 R)(p2 + q2 R) with R^2 = uR + v.
  const Rat qq = x.q() * y.q();
  return QuadNum(x.p() * y.p() + a.v() * qq,
                 x.p() * y.q() + x.q() * y.p() + a.u() * qq, a);
}

QuadNum quad_conj(const QuadNum& x) {
  return QuadNum(x.p() + x.q() * x.ambient().u(), -x.q(), x.ambient());
}

Rat quad_norm(const QuadNum& x) {
  const Ambient& a = x.ambient();
  return x.p() * x.p() + x.p() * x.q() * a.u() - x.q() * x.q() * a.v();
}

QuadNum quad_inv(const QuadNum& x) {
  if (x.is_zero()) fail(ErrorCode::kDivisionByZero, "inverse of zero");
  const Rat n = quad_norm(x);
  const QuadNum c = quad_conj(x);
  return QuadNum(c.p() / n, c.q() / n, x.ambient());
}

bool operator==(const QuadNum& x, const QuadNum& y) {
  check_context(x, y);
  return x.p() == y.p() && x.q() == y.q();
}

namespace {

// RAII holder for an MPFR value at an explicit binary precision. The Boost
// wrapper reads a process-wide default precision, so the arithmetic here goes
// through the C API to stay safe inside parallel regions.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

void set_rat(mpfr_ptr out, const Rat& r) {
  mpfr_set_q(out, r.backend().data(), MPFR_RNDN);
}

// p + q (u + sqrt(D)) / 2 at the given binary precision.
void embed_into(mpfr_ptr out, const QuadNum& x, mpfr_prec_t bits) {
  const Ambient& a = x.ambient();
  MpfrValue root(bits), tmp(bits);
  set_rat(root.get(), a.discriminant());
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  set_rat(tmp.get(), a.u());
  mpfr_add(root.get(), root.get(), tmp.get(), MPFR_RNDN);
  mpfr_div_ui(root.get(), root.get(), 2, MPFR_RNDN);
  set_rat(tmp.get(), x.q());
  mpfr_mul(root.get(), root.get(), tmp.get(), MPFR_RNDN);
  set_rat(tmp.get(), x.p());
  mpfr_add(out, root.get(), tmp.get(), MPFR_RNDN);
}

mpfr_prec_t digits_to_bits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 1;
}

}  // namespace

BigReal quad_embed(const QuadNum& x, unsigned digits) {
  const Ambient& a = x.ambient();
  if (!a.real_embeddable()) fail(ErrorCode::kNotRealEmbeddable, "u^2 + 4v <= 0");
  if (digits == 0) fail(ErrorCode::kInvalidTarget, "precision must be positive");
  MpfrValue work(digits_to_bits(digits + 10));
  embed_into(work.get(), x, digits_to_bits(digits + 10));
  BigReal out;
  out.precision(digits);
  mpfr_set(out.backend().data(), work.get(), MPFR_RNDN);
  return out;
}

int quad_sign(const QuadNum& x) {
  auto sgn = [](const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); };
  if (x.q() == 0) return sgn(x.p());
  const Ambient& amb = x.ambient();
  if (!amb.real_embeddable()) fail(ErrorCode::kNotRealEmbeddable, "u^2 + 4v <= 0");
  // x = A + B sqrt(D) with A = p + q u / 2, B = q / 2.
  const Rat A = x.p() + x.q() * amb.u() / 2;
  const Rat B = x.q() / 2;
  const int sa = sgn(A);
  const int sb = sgn(B);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare A^2 with B^2 D. D is not a rational square, so
  // the two never tie.
  const Rat lhs = A * A;
  const Rat rhs = B * B * amb.discriminant();
  return lhs > rhs ? sa : sb;
}

std::optional<QuadNum> quad_sqrt(const QuadNum& x) {
  const Ambient& amb = x.ambient();
  if (x.is_zero()) return x;
  if (amb.real_embeddable() && quad_sign(x) < 0) return std::nullopt;
  // Work in the basis {1, sqrt(D)}: x = A + B sqrt(D).
  const Rat& D = amb.discriminant();
  const Rat A = x.p() + x.q() * amb.u() / 2;
  const Rat B = x.q() / 2;
  // (s + t sqrt(D))^2 = s^2 + t^2 D + 2 s t sqrt(D).
  auto from_basis = [&amb](const Rat& s, const Rat& t) {
    // s + t sqrt(D) = s + t (2R - u).
    return QuadNum(s - t * amb.u(), 2 * t, amb);
  };
  auto try_candidate = [&](const Rat& s, const Rat& t) -> std::optional<QuadNum> {
    QuadNum c = from_basis(s, t);
    if (c * c == x) {
      if (amb.real_embeddable() && quad_sign(c) < 0) c = -c;
      return c;
    }
    return std::nullopt;
  };
  if (B == 0) {
    if (auto s = rat_sqrt(A)) return try_candidate(*s, Rat(0));
    if (auto t2 = rat_sqrt(A / D)) return try_candidate(Rat(0), *t2);
    return std::nullopt;
  }
  const auto disc = rat_sqrt(A * A - B * B * D);
  if (!disc) return std::nullopt;
  for (const Rat& s2 : {Rat((A + *disc) / 2), Rat((A - *disc) / 2)}) {
    const auto s = rat_sqrt(s2);
    if (!s || *s == 0) continue;
    if (auto c = try_candidate(*s, B / (2 * *s))) return c;
  }
  return std::nullopt;
}

double quad_to_double(const QuadNum& x) {
  if (x.q() == 0) return x.p().convert_to<double>();
  if (!x.ambient().real_embeddable()) fail(ErrorCode::kNotRealEmbeddable, "u^2 + 4v <= 0");
  MpfrValue work(200);
  embed_into(work.get(), x, 200);
  return mpfr_get_d(work.get(), MPFR_RNDN);
}

std::string quad_to_string(const QuadNum& x) {
  if (x.p() == 0 && x.q() != 0) {
    return (x.q() < 0 ? "-" : "") + rat_to_string(abs(x.q())) + " R";
  }
  std::string out = rat_to_string(x.p());
  if (x.q() > 0) {
    out += " + " + rat_to_string(x.q()) + " R";
  } else if (x.q() < 0) {
    out += " - " + rat_to_string(-x.q()) + " R";
  }
  return out;
}

QuadNum parse_quad(std::string_view text, const Ambient& ambient) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s.push_back(c);
  }
  if (s.empty()) fail(ErrorCode::kParseError, "empty field element");
  Rat p(0);
  Rat q(0);
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    const std::string coeff = s.substr(i, j - i);
    bool is_root = j < s.size() && s[j] == 'R';
    if (coeff.empty() && !is_root) {
      fail(ErrorCode::kParseError, "unexpected character in '" + std::string(text) + "'");
    }
    Rat value = coeff.empty() ? Rat(1) : parse_rat(coeff);
    value *= sign;
    if (is_root) {
      q += value;
      ++j;
    } else {
      p += value;
    }
    any = true;
    i = j;
    if (i < s.size() && s[i] != '+' && s[i] != '-') {
      fail(ErrorCode::kParseError, "unexpected character in '" + std::string(text) + "'");
    }
  }
  if (!any) fail(ErrorCode::kParseError, "no terms in '" + std::string(text) + "'");
  return QuadNum(p, q, ambient);
}

std::ostream& operator<<(std::ostream& os, const QuadNum& x) {
  return os << quad_to_string(x);
}

}  // namespace mubc
