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

#include "mubc/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mubc {

namespace {

// Position of stacked coordinate i in the interleaved ordering.
std::size_t stacked_to_interleaved_index(std::size_t i, std::size_t modes) {
  return i < modes ? 2 * i : 2 * (i - modes) + 1;
}

template <Scalar T>
void require_even_square(const Matrix<T>& m) {
  if (!m.square() || m.rows() == 0 || m.rows() % 2 != 0) {
    fail(ErrorCode::kDimensionMismatch,
         "symplectic matrices are 2N x 2N; got " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()));
  }
}

template <Scalar T>
double max_abs(const Matrix<T>& m) {
  double worst = 0.0;
  for (const T& x : m.data()) worst = std::max(worst, std::fabs(to_real(x)));
  return worst;
}

}  // namespace

template <Scalar T>
Matrix<T> symplectic_form(std::size_t modes, Ordering ordering, const T& like) {
  Matrix<T> j = Matrix<T>::zeros(2 * modes, 2 * modes, like);
  const T one = one_like(like);
  for (std::size_t n = 0; n < modes; ++n) {
    // q_n row pairs with -p_n, p_n row with +q_n, matching j = [[0,-1],[1,0]].
    j(n, modes + n) = -one;
    j(modes + n, n) = one;
  }
  return ordering == Ordering::kStacked ? j : stacked_to_interleaved(j);
}

template <Scalar T>
Matrix<T> interleaved_to_stacked(const Matrix<T>& m) {
  require_even_square(m);
  const std::size_t modes = m.rows() / 2;
  Matrix<T> out(m.rows(), m.cols(), m.like());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = m(stacked_to_interleaved_index(r, modes),
                    stacked_to_interleaved_index(c, modes));
  return out;
}

template <Scalar T>
Matrix<T> stacked_to_interleaved(const Matrix<T>& m) {
  require_even_square(m);
  const std::size_t modes = m.rows() / 2;
  Matrix<T> out(m.rows(), m.cols(), m.like());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(stacked_to_interleaved_index(r, modes), stacked_to_interleaved_index(c, modes)) =
          m(r, c);
  return out;
}

template <Scalar T>
bool is_symplectic(const Matrix<T>& m, double tolerance, Ordering ordering) {
  require_even_square(m);
  const Matrix<T> j = symplectic_form(m.rows() / 2, ordering, m.like());
  const Matrix<T> form = m.transpose() * j * m;
  if constexpr (kIsExact<T>) {
    return form == j;
  } else {
    return max_abs_diff(form, j) <= tolerance;
  }
}

template <Scalar T>
SymplecticMatrix<T>::SymplecticMatrix(const Matrix<T>& m, Ordering ordering,
                                      double tolerance) {
  require_even_square(m);
  const double scale = kIsExact<T> ? 1.0 : std::max(1.0, std::pow(max_abs(m), 2));
  if (!is_symplectic(m, tolerance * scale, ordering)) {
    fail(ErrorCode::kNotSymplectic, "M^t J M != J");
  }
  m_ = ordering == Ordering::kStacked ? m : interleaved_to_stacked(m);
}

template <Scalar T>
Matrix<T> BlockDecomposition<T>::assemble_m() const {
  const std::size_t n = Mqq.rows();
  Matrix<T> out(2 * n, 2 * n, Mqq.like());
  out.set_block(0, 0, Mqq);
  out.set_block(0, n, Mqp);
  out.set_block(n, 0, Mpq);
  out.set_block(n, n, Mpp);
  return out;
}

template <Scalar T>
Matrix<T> BlockDecomposition<T>::assemble_n() const {
  const std::size_t n = Nqq.rows();
  Matrix<T> out(2 * n, 2 * n, Nqq.like());
  out.set_block(0, 0, Nqq);
  out.set_block(0, n, Nqp);
  out.set_block(n, 0, Npq);
  out.set_block(n, n, Npp);
  return out;
}

namespace {

template <Scalar T>
bool below(const T& value, double threshold) {
  if constexpr (kIsExact<T>) {
    (void)threshold;
    return is_zero(value);
  } else {
    return std::fabs(value) <= threshold;
  }
}

}  // namespace

template <Scalar T>
Matrix<T> cayley_matrix(const SymplecticMatrix<T>& sm, const MetaplecticOptions& opts) {
  const Matrix<T>& m = sm.stacked();
  const std::size_t dim = m.rows();
  const Matrix<T> id = Matrix<T>::identity(dim, m.like());
  const Matrix<T> minus = m - id;
  if (below(determinant(minus), opts.singular_threshold)) {
    fail(ErrorCode::kSingularCayley, "det(M - I) vanishes");
  }
  const auto minus_inv = inverse(minus);
  if (!minus_inv) fail(ErrorCode::kSingularCayley, "M - I is not invertible");
  const T half = reciprocal(from_int(m.like(), 2));
  return half * (symplectic_form(sm.modes(), Ordering::kStacked, m.like()) *
                   (m + id) * *minus_inv);
}

template <Scalar T>
BlockDecomposition<T> block_decomposition(const SymplecticMatrix<T>& sm,
                                          const MetaplecticOptions& opts) {
  const Matrix<T>& m = sm.stacked();
  const Matrix<T> n = cayley_matrix(sm, opts);
  const std::size_t k = sm.modes();
  return BlockDecomposition<T>{m.block(0, 0, k, k), m.block(0, k, k, k),
                               m.block(k, 0, k, k), m.block(k, k, k, k),
                               n.block(0, 0, k, k), n.block(0, k, k, k),
                               n.block(k, 0, k, k), n.block(k, k, k, k)};
}

template <Scalar T>
double genmu_overlap_sq(const SymplecticMatrix<T>& sm, double hbar,
                        const MetaplecticOptions& opts) {
  if (!(hbar > 0)) fail(ErrorCode::kInvalidTarget, "hbar must be positive");
  const Matrix<T>& m = sm.stacked();
  const std::size_t k = sm.modes();
  const T det_minus = determinant(m - Matrix<T>::identity(m.rows(), m.like()));
  const Matrix<T> n = cayley_matrix(sm, opts);
  const T det_npp = determinant(n.block(k, k, k, k));
  if (below(det_npp, opts.block_threshold)) {
    fail(ErrorCode::kDegenerateBlock, "det(N_pp) vanishes");
  }
  const double denom = std::fabs(to_real(det_minus * det_npp));
  return std::pow(2.0 * std::numbers::pi * hbar, -static_cast<double>(k)) / denom;
}

template <Scalar T>
SymplecticMatrix<T> symplectic_inverse(const SymplecticMatrix<T>& sm) {
  const auto inv = inverse(sm.stacked());
  if (!inv) fail(ErrorCode::kNonInvertible, "matrix is singular");
  return SymplecticMatrix<T>(*inv, Ordering::kStacked, 1e-8);
}

template <Scalar T>
double compose_overlap_sq(const SymplecticMatrix<T>& m, const SymplecticMatrix<T>& m_prime,
                          double hbar, const MetaplecticOptions& opts) {
  if (m.modes() != m_prime.modes()) {
    fail(ErrorCode::kDimensionMismatch, "matrices act on different numbers of modes");
  }
  return genmu_overlap_sq(symplectic_inverse(m) * m_prime, hbar, opts);
}

template <Scalar T>
MetaplecticSpec<T> make_metaplectic_spec(const SymplecticMatrix<T>& m, double hbar,
                                         const MetaplecticOptions& opts) {
  return MetaplecticSpec<T>{m, cayley_matrix(m, opts), genmu_overlap_sq(m, hbar, opts), hbar};
}

template <Scalar T>
SymplecticMatrix<T> special_m(const T& Q, const T& P, const T& mu) {
  if (is_zero(Q)) {
    fail(ErrorCode::kInvalidDirection,
         "special_m divides by Q; use special_m_general for Q = 0");
  }
  const T zero = zero_like(Q);
  const T one = one_like(Q);
  const Matrix<T> shear{{one, zero}, {mu, one}};
  const Matrix<T> base{{P, -Q}, {reciprocal(Q), zero}};
  return SymplecticMatrix<T>(shear * base);
}

template <Scalar T>
SymplecticMatrix<T> special_m_general(const T& Q, const T& P, const T& mu) {
  if (!is_zero(Q)) return special_m(Q, P, mu);
  if (is_zero(P)) fail(ErrorCode::kInvalidDirection, "zero direction");
  // j (0, P)^t = (-P, 0)^t.
  const T zero = zero_like(Q);
  const T one = one_like(Q);
  const SymplecticMatrix<T> quarter(Matrix<T>{{zero, -one}, {one, zero}});
  return special_m(-P, zero, mu) * quarter;
}

namespace {

template <Scalar T>
void require_symmetric(const Matrix<T>& s) {
  if (!s.square()) fail(ErrorCode::kDimensionMismatch, "shear block must be square");
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = r + 1; c < s.cols(); ++c)
      if (!(s(r, c) == s(c, r))) fail(ErrorCode::kNotSymplectic, "shear block not symmetric");
}

}  // namespace

template <Scalar T>
SymplecticMatrix<T> shear_upper(const Matrix<T>& s) {
  require_symmetric(s);
  const std::size_t k = s.rows();
  Matrix<T> m = Matrix<T>::identity(2 * k, s.like());
  m.set_block(0, k, s);
  return SymplecticMatrix<T>(m);
}

template <Scalar T>
SymplecticMatrix<T> shear_lower(const Matrix<T>& s) {
  require_symmetric(s);
  const std::size_t k = s.rows();
  Matrix<T> m = Matrix<T>::identity(2 * k, s.like());
  m.set_block(k, 0, s);
  return SymplecticMatrix<T>(m);
}

template <Scalar T>
SymplecticMatrix<T> squeeze(const Matrix<T>& a) {
  const auto inv = inverse(a);
  if (!inv) fail(ErrorCode::kNonInvertible, "squeeze block is singular");
  const std::size_t k = a.rows();
  Matrix<T> m = Matrix<T>::zeros(2 * k, 2 * k, a.like());
  m.set_block(0, 0, a);
  m.set_block(k, k, inv->transpose());
  return SymplecticMatrix<T>(m);
}

template <Scalar T>
SymplecticMatrix<T> mode_rotation(std::size_t modes, std::size_t mode, const T& c,
                                  const T& s) {
  if (mode >= modes) fail(ErrorCode::kDimensionMismatch, "mode index out of range");
  Matrix<T> m = Matrix<T>::identity(2 * modes, c);
  m(mode, mode) = c;
  m(mode, modes + mode) = s;
  m(modes + mode, mode) = -s;
  m(modes + mode, modes + mode) = c;
  return SymplecticMatrix<T>(m);
}

SymplecticMatrix<double> rotation(double theta) {
  return mode_rotation<double>(1, 0, std::cos(theta), std::sin(theta));
}

template <Scalar T>
MetaplecticPairTable metaplectic_pairwise_overlaps(
    const std::vector<SymplecticMatrix<T>>& family, double hbar,
    const MetaplecticOptions& opts) {
  MetaplecticPairTable table;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      MetaplecticPairTable::Entry e{i, j, 0.0, false};
      try {
        e.overlap_sq = compose_overlap_sq(family[i], family[j], hbar, opts);
        e.defined = true;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kSingularCayley &&
            err.code() != ErrorCode::kDegenerateBlock) {
          throw;
        }
      }
      if (e.defined) {
        lo = any ? std::min(lo, e.overlap_sq) : e.overlap_sq;
        hi = any ? std::max(hi, e.overlap_sq) : e.overlap_sq;
        any = true;
      }
      table.entries.push_back(e);
    }
  }
  table.spread = any ? hi / lo : 0.0;
  return table;
}

#define MUBC_INSTANTIATE(T)                                                                \
  template class SymplecticMatrix<T>;                                                      \
  template struct BlockDecomposition<T>;                                                   \
  template Matrix<T> symplectic_form(std::size_t, Ordering, const T&);                     \
  template Matrix<T> interleaved_to_stacked(const Matrix<T>&);                             \
  template Matrix<T> stacked_to_interleaved(const Matrix<T>&);                             \
  template bool is_symplectic(const Matrix<T>&, double, Ordering);                         \
  template Matrix<T> cayley_matrix(const SymplecticMatrix<T>&, const MetaplecticOptions&); \
  template BlockDecomposition<T> block_decomposition(const SymplecticMatrix<T>&,           \
                                                     const MetaplecticOptions&);           \
  template double genmu_overlap_sq(const SymplecticMatrix<T>&, double,                     \
                                   const MetaplecticOptions&);                             \
  template SymplecticMatrix<T> symplectic_inverse(const SymplecticMatrix<T>&);             \
  template double compose_overlap_sq(const SymplecticMatrix<T>&,                           \
                                     const SymplecticMatrix<T>&, double,                   \
                                     const MetaplecticOptions&);                           \
  template MetaplecticSpec<T> make_metaplectic_spec(const SymplecticMatrix<T>&, double,    \
                                                    const MetaplecticOptions&);            \
  template SymplecticMatrix<T> special_m(const T&, const T&, const T&);                    \
  template SymplecticMatrix<T> special_m_general(const T&, const T&, const T&);            \
  template SymplecticMatrix<T> shear_upper(const Matrix<T>&);                              \
  template SymplecticMatrix<T> shear_lower(const Matrix<T>&);                              \
  template SymplecticMatrix<T> squeeze(const Matrix<T>&);                                  \
  template SymplecticMatrix<T> mode_rotation(std::size_t, std::size_t, const T&, const T&); \
  template MetaplecticPairTable metaplectic_pairwise_overlaps(                             \
      const std::vector<SymplecticMatrix<T>>&, double, const MetaplecticOptions&);

MUBC_INSTANTIATE(double)
MUBC_INSTANTIATE(QuadNum)

#undef MUBC_INSTANTIATE

}  // namespace mubc
