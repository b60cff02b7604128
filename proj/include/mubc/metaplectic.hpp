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

// Symplectic 2N x 2N matrices and the overlap magnitudes of the states
// U_M |q> produced by their metaplectic representatives.
//
// Coordinates are stacked as (q_1..q_N, p_1..p_N) with J = [[0, -I], [I, 0]];
// the interleaved ordering (q_1, p_1, q_2, p_2, ...) with J = j (+) ... (+) j
// is supported through explicit converters. For M - I invertible,
//
//   N = 1/2 J (M + I)(M - I)^-1                (symmetric)
//   |<q'|M, q>|^2 = (2 pi hbar)^-N / |det(M - I) det(N_pp)|,
//
// and overlaps between two such families follow from M^-1 M'.

#ifndef MUBC_METAPLECTIC_HPP_
#define MUBC_METAPLECTIC_HPP_

#include <cstddef>
#include <vector>

#include "mubc/matrix.hpp"
#include "mubc/scalar.hpp"

namespace mubc {

enum class Ordering { kStacked, kInterleaved };

template <Scalar T>
Matrix<T> symplectic_form(std::size_t modes, Ordering ordering, const T& like);

template <Scalar T>
Matrix<T> interleaved_to_stacked(const Matrix<T>& m);
template <Scalar T>
Matrix<T> stacked_to_interleaved(const Matrix<T>& m);

// True iff max|M^t J M - J| <= tolerance (exact mode: equality).
template <Scalar T>
bool is_symplectic(const Matrix<T>& m, double tolerance = 1e-12,
                   Ordering ordering = Ordering::kStacked);

template <Scalar T>
class SymplecticMatrix {
 public:
  // Stores the matrix in stacked ordering; throws kNotSymplectic otherwise.
  explicit SymplecticMatrix(const Matrix<T>& m, Ordering ordering = Ordering::kStacked,
                            double tolerance = 1e-10);

  std::size_t modes() const { return m_.rows() / 2; }
  const Matrix<T>& stacked() const { return m_; }
  Matrix<T> interleaved() const { return stacked_to_interleaved(m_); }

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return SymplecticMatrix(a.m_ * b.m_, Ordering::kStacked, 1e-8);
  }

 private:
  Matrix<T> m_;
};

template <Scalar T>
struct BlockDecomposition {
  Matrix<T> Mqq, Mqp, Mpq, Mpp;
  Matrix<T> Nqq, Nqp, Npq, Npp;

  Matrix<T> assemble_m() const;
  Matrix<T> assemble_n() const;
};

struct MetaplecticOptions {
  // Numeric mode refuses |det(M - I)| at or below this.
  double singular_threshold = 1e-10;
  // Numeric mode reports kDegenerateBlock for |det(N_pp)| at or below this.
  double block_threshold = 1e-12;
};

template <Scalar T>
Matrix<T> cayley_matrix(const SymplecticMatrix<T>& m, const MetaplecticOptions& opts = {});

template <Scalar T>
BlockDecomposition<T> block_decomposition(const SymplecticMatrix<T>& m,
                                          const MetaplecticOptions& opts = {});

template <Scalar T>
double genmu_overlap_sq(const SymplecticMatrix<T>& m, double hbar,
                        const MetaplecticOptions& opts = {});

template <Scalar T>
SymplecticMatrix<T> symplectic_inverse(const SymplecticMatrix<T>& m);

template <Scalar T>
double compose_overlap_sq(const SymplecticMatrix<T>& m, const SymplecticMatrix<T>& m_prime,
                          double hbar, const MetaplecticOptions& opts = {});

template <Scalar T>
struct MetaplecticSpec {
  SymplecticMatrix<T> M;
  Matrix<T> cayley;
  double overlap_sq;
  double hbar;
};

template <Scalar T>
MetaplecticSpec<T> make_metaplectic_spec(const SymplecticMatrix<T>& m, double hbar,
                                         const MetaplecticOptions& opts = {});

// [[1, 0], [mu, 1]] [[P, -Q], [1/Q, 0]]: maps (Q, P) to (0, 1). Requires
// Q != 0 (kInvalidDirection otherwise).
template <Scalar T>
SymplecticMatrix<T> special_m(const T& Q, const T& P, const T& mu);

// Same mapping for any non-zero direction: for Q = 0 the direction is first
// turned by the quarter rotation j, i.e. special_m(-P, 0, mu) j.
template <Scalar T>
SymplecticMatrix<T> special_m_general(const T& Q, const T& P, const T& mu);

// Exactly symplectic generators (stacked ordering).
// [[I, S], [0, I]] with S symmetric.
template <Scalar T>
SymplecticMatrix<T> shear_upper(const Matrix<T>& s);
// [[I, 0], [S, I]] with S symmetric.
template <Scalar T>
SymplecticMatrix<T> shear_lower(const Matrix<T>& s);
// diag(A, A^-t) for invertible A.
template <Scalar T>
SymplecticMatrix<T> squeeze(const Matrix<T>& a);
// Rotation by (c, s), c^2 + s^2 = 1, in the (q_n, p_n) plane:
// q' = c q + s p, p' = -s q + c p.
template <Scalar T>
SymplecticMatrix<T> mode_rotation(std::size_t modes, std::size_t mode, const T& c,
                                  const T& s);

SymplecticMatrix<double> rotation(double theta);

// Pairwise composed overlaps of a family of symplectic matrices; the raw
// material for an MU search over general metaplectic bases.
struct MetaplecticPairTable {
  struct Entry {
    std::size_t i, j;
    double overlap_sq;
    bool defined;  // false where the composite hits SingularCayley/DegenerateBlock
  };
  std::vector<Entry> entries;
  // max/min ratio over defined entries; 1 means all pairwise overlaps agree.
  double spread = 0.0;
};

template <Scalar T>
MetaplecticPairTable metaplectic_pairwise_overlaps(
    const std::vector<SymplecticMatrix<T>>& family, double hbar,
    const MetaplecticOptions& opts = {});

}  // namespace mubc

#endif  // MUBC_METAPLECTIC_HPP_
