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

// Independent reference computations used only by the tests. Nothing here
// calls into the library's own linear algebra: determinants and inverses go
// through Eigen, closed forms are written out by hand.

#ifndef MUBC_TESTS_ORACLE_KIT_HPP_
#define MUBC_TESTS_ORACLE_KIT_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mubc/exact_field.hpp"
#include "mubc/metaplectic.hpp"
#include "mubc/mu_search.hpp"
#include "mubc/symplectic_core.hpp"

namespace kit {

using mubc::Ambient;
using mubc::DirectionVector;
using mubc::Matrix;
using mubc::ProductVector;
using mubc::QuadNum;
using mubc::Rat;

inline constexpr double kPi = std::numbers::pi;

// Seeds shared by every property suite.
inline const std::vector<std::uint64_t>& seeds() {
  static const std::vector<std::uint64_t> s = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  return s;
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

// ---------------------------------------------------------------------------
// Random exact values

inline Rat random_rat(std::mt19937_64& rng, int max_num = 9, int max_den = 6) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rat(num(rng)) / Rat(den(rng));
}

inline QuadNum random_quad(std::mt19937_64& rng, const Ambient& amb = Ambient::golden()) {
  return QuadNum(random_rat(rng), random_rat(rng), amb);
}

inline QuadNum random_nonzero_quad(std::mt19937_64& rng,
                                   const Ambient& amb = Ambient::golden()) {
  for (;;) {
    QuadNum x = random_quad(rng, amb);
    if (!x.is_zero()) return x;
  }
}

inline DirectionVector<QuadNum> random_exact_direction(std::mt19937_64& rng) {
  for (;;) {
    QuadNum q = random_quad(rng), p = random_quad(rng);
    if (!q.is_zero() || !p.is_zero()) return {q, p};
  }
}

inline DirectionVector<double> random_direction(std::mt19937_64& rng, double lo = -2.0,
                                                double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    double q = u(rng), p = u(rng);
    if (std::hypot(q, p) > 1e-3) return {q, p};
  }
}

template <class T>
ProductVector<T> random_product(std::mt19937_64& rng, std::size_t modes) {
  std::vector<DirectionVector<T>> f;
  for (std::size_t n = 0; n < modes; ++n) {
    if constexpr (std::is_same_v<T, QuadNum>) {
      f.push_back(random_exact_direction(rng));
    } else {
      f.push_back(random_direction(rng));
    }
  }
  return ProductVector<T>(std::move(f));
}

// Product vectors are equal as tensors when their expansions agree; the
// factors themselves are only defined up to (lambda a) (x) (b / lambda) and
// the overall sign.
inline bool same_product(const ProductVector<QuadNum>& a, const ProductVector<QuadNum>& b) {
  if (a.expanded().size() != b.expanded().size()) return false;
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < a.expanded().size(); ++i) {
    plus = plus && a.expanded()[i] == b.expanded()[i];
    minus = minus && a.expanded()[i] == -b.expanded()[i];
  }
  return plus || minus;
}

// ---------------------------------------------------------------------------
// Exactly symplectic matrices from generator products

template <class T>
T lift(const Rat& r, const T& like) {
  if constexpr (std::is_same_v<T, QuadNum>) {
    return QuadNum(r, Rat(0), like.ambient());
  } else {
    return r.convert_to<double>();
  }
}

// Random symmetric N x N with small rational entries.
template <class T>
Matrix<T> random_symmetric(std::mt19937_64& rng, std::size_t n, const T& like) {
  Matrix<T> s = Matrix<T>::zeros(n, n, like);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      s(i, j) = lift(random_rat(rng, 3, 2), like);
      s(j, i) = s(i, j);
    }
  return s;
}

// Unit lower-triangular times diagonal: always invertible.
template <class T>
Matrix<T> random_invertible(std::mt19937_64& rng, std::size_t n, const T& like) {
  Matrix<T> a = Matrix<T>::zeros(n, n, like);
  std::uniform_int_distribution<int> pick(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    Rat d(pick(rng));
    if (rng() & 1) d = -d;
    if (rng() & 1) d = Rat(1) / d;
    a(i, i) = lift(d, like);
    for (std::size_t j = 0; j < i; ++j) a(i, j) = lift(random_rat(rng, 2, 2), like);
  }
  return a;
}

// Product of `length` random shears, squeezes and Pythagorean rotations.
template <class T>
mubc::SymplecticMatrix<T> random_symplectic(std::mt19937_64& rng, std::size_t modes,
                                            const T& like, int length = 4) {
  using SM = mubc::SymplecticMatrix<T>;
  SM acc(Matrix<T>::identity(2 * modes, like));
  std::uniform_int_distribution<int> kind(0, 3);
  for (int step = 0; step < length; ++step) {
    switch (kind(rng)) {
      case 0: acc = acc * mubc::shear_upper(random_symmetric(rng, modes, like)); break;
      case 1: acc = acc * mubc::shear_lower(random_symmetric(rng, modes, like)); break;
      case 2: acc = acc * mubc::squeeze(random_invertible(rng, modes, like)); break;
      default: {
        // (3/5, 4/5) and friends keep the rotation exact.
        static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
        const auto& t = triples[rng() % 3];
        Rat c = Rat(t[0]) / t[2], s = Rat(t[1]) / t[2];
        if (rng() & 1) s = -s;
        acc = acc * mubc::mode_rotation(modes, rng() % modes, lift(c, like), lift(s, like));
      }
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Eigen-backed linear algebra

template <class T>
Eigen::MatrixXd to_eigen(const Matrix<T>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = mubc::to_real(m(r, c));
  return e;
}

inline Eigen::MatrixXd stacked_J(std::size_t n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return J;
}

// (2 pi hbar)^-N / |det(M - I) det(N_pp)| with N = 1/2 J (M+I)(M-I)^-1,
// all through Eigen.
inline double eigen_genmu_overlap_sq(const Eigen::MatrixXd& M, double hbar) {
  const auto n = M.rows() / 2;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const Eigen::MatrixXd Nc = 0.5 * stacked_J(n) * (M + I) * (M - I).inverse();
  const double d = (M - I).determinant() * Nc.bottomRightCorner(n, n).determinant();
  return std::pow(2.0 * kPi * hbar, -static_cast<double>(n)) / std::fabs(d);
}

// Expanded b^t j_N a with j_N built as a Kronecker power in Eigen.
inline double eigen_expanded_form(const ProductVector<double>& a,
                                  const ProductVector<double>& b) {
  Eigen::MatrixXd j(2, 2);
  j << 0, -1, 1, 0;
  Eigen::MatrixXd jN = Eigen::MatrixXd::Ones(1, 1);
  for (std::size_t n = 0; n < a.modes(); ++n) {
    Eigen::MatrixXd next(jN.rows() * 2, jN.cols() * 2);
    for (int r = 0; r < jN.rows(); ++r)
      for (int c = 0; c < jN.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = jN(r, c) * j;
    jN = next;
  }
  Eigen::VectorXd va(a.expanded().size()), vb(b.expanded().size());
  for (std::size_t i = 0; i < a.expanded().size(); ++i) {
    va(i) = a.expanded()[i];
    vb(i) = b.expanded()[i];
  }
  return vb.dot(jN * va);
}

// ---------------------------------------------------------------------------
// Certificate recheck

// Re-solves every 3x2 sign-pattern system by Cramer's rule on the first two
// rows and evaluates the third, independently of the recorded ranks.
template <class T>
bool recheck_certificate(const mubc::InfeasibilityCertificate<T>& cert, double tol = 1e-12) {
  if (cert.patterns.size() != 8) return false;
  const DirectionVector<T>* x[3] = {&cert.a, &cert.b, &cert.c};
  const double kscale = std::fabs(mubc::to_real(cert.k));
  for (const auto& pat : cert.patterns) {
    // d^t j x = Q_d P_x - P_d Q_x = s k, unknowns (Q_d, P_d).
    auto a11 = x[0]->P(), a12 = -x[0]->Q(), a21 = x[1]->P(), a22 = -x[1]->Q();
    T r1 = cert.k * mubc::from_int(cert.k, pat.signs[0]);
    T r2 = cert.k * mubc::from_int(cert.k, pat.signs[1]);
    T r3 = cert.k * mubc::from_int(cert.k, pat.signs[2]);
    T det = a11 * a22 - a12 * a21;
    bool singular = mubc::is_zero(det);
    if constexpr (!mubc::kIsExact<T>) singular = std::fabs(det) <= tol * kscale * kscale;
    if (singular) {
      // Parallel pair: the two rows must then contradict each other.
      T cross = a11 * r2 - a21 * r1;
      bool zero = mubc::is_zero(cross);
      if constexpr (!mubc::kIsExact<T>) zero = std::fabs(cross) <= tol * kscale * kscale;
      if (zero) return false;
      continue;
    }
    T qd = (r1 * a22 - a12 * r2) / det;
    T pd = (a11 * r2 - r1 * a21) / det;
    T third = qd * x[2]->P() - pd * x[2]->Q() - r3;
    bool zero = mubc::is_zero(third);
    if constexpr (!mubc::kIsExact<T>) zero = std::fabs(third) <= tol * kscale;
    if (zero) return false;
  }
  return true;
}

}  // namespace kit

#endif  // MUBC_TESTS_ORACLE_KIT_HPP_
