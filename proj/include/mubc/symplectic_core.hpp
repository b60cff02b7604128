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

// The unsigned symplectic form on direction vectors and their tensor
// products. Families of generalized eigenstates labelled by product vectors
// a, b are mutually unbiased with
//
//   |<a,alpha|b,beta>|^2 = (2 pi hbar)^-N / |a^t j_N b|,
//
// so an MU set of product bases is a set of product vectors whose pairwise
// unsigned symplectic products all equal one constant K.

#ifndef MUBC_SYMPLECTIC_CORE_HPP_
#define MUBC_SYMPLECTIC_CORE_HPP_

#include <cstddef>
#include <vector>

#include "mubc/exec.hpp"
#include "mubc/matrix.hpp"
#include "mubc/scalar.hpp"

namespace mubc {

inline constexpr std::size_t kMaxModes = 8;

// The pair (Q, P) labelling the generator P q - Q p. The zero vector labels
// no family and is rejected.
template <Scalar T>
class DirectionVector {
 public:
  DirectionVector(T q_component, T p_component);

  const T& Q() const { return q_; }
  const T& P() const { return p_; }

  friend bool operator==(const DirectionVector& a, const DirectionVector& b) {
    return a.q_ == b.q_ && a.p_ == b.p_;
  }

 private:
  T q_;
  T p_;
};

// a_1 (x) ... (x) a_N together with its 2^N Kronecker expansion.
template <Scalar T>
class ProductVector {
 public:
  explicit ProductVector(std::vector<DirectionVector<T>> factors);

  std::size_t modes() const { return factors_.size(); }
  const std::vector<DirectionVector<T>>& factors() const { return factors_; }
  const std::vector<T>& expanded() const { return expanded_; }

  friend bool operator==(const ProductVector& a, const ProductVector& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<DirectionVector<T>> factors_;
  std::vector<T> expanded_;
};

template <Scalar T>
struct MUConfiguration {
  std::vector<ProductVector<T>> vectors;
  T targetK;
  double hbar = 1.0;

  std::size_t modes() const { return vectors.empty() ? 0 : vectors.front().modes(); }
};

template <Scalar T>
struct PairRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  T product;    // signed a_i^t j_N a_j
  T magnitude;  // |product|
  double deviation = 0.0;  // | |product| - K | / K
  bool parallel = false;   // zero product: shared eigenstates, not MU form
};

template <Scalar T>
struct VerificationReport {
  std::vector<PairRecord<T>> pairs;  // sorted by (i, j)
  T K;
  bool verdict = false;
  bool has_parallel_pair = false;
  double max_deviation = 0.0;
  // max | |product| - K | in absolute terms (search residual convention).
  double max_abs_residual = 0.0;
};

struct VerifyOptions {
  double tolerance = 1e-12;  // relative; numeric mode only
  bool infer_k = false;      // take K from the first pair instead of targetK
  ExecPolicy exec = ExecPolicy::kParallel;
};

// Q_a P_b - P_a Q_b. With j = [[0, -1], [1, 0]] this is b^t j a, i.e. the
// form a^t j b up to sign; only magnitudes enter the overlap law.
template <Scalar T>
T symp2(const DirectionVector<T>& a, const DirectionVector<T>& b);

// Product over modes of symp2; equals b^t j_N a on the expansions.
template <Scalar T>
T symp_product(const ProductVector<T>& a, const ProductVector<T>& b);

// b^t j_N a computed from the 2^N expansions (the cross-check route).
template <Scalar T>
T expanded_symplectic_form(const ProductVector<T>& a, const ProductVector<T>& b);

template <Scalar T>
Matrix<T> build_jN(std::size_t modes, const T& like);

template <Scalar T>
double overlap_magnitude_sq(const ProductVector<T>& a, const ProductVector<T>& b,
                            double hbar);
template <Scalar T>
double overlap_magnitude_sq(const DirectionVector<T>& a, const DirectionVector<T>& b,
                            double hbar);

// Overlap density k = (2 pi hbar)^(-N/2) K^(-1/2) of an MU set at constant K.
double overlap_constant(double K, std::size_t modes, double hbar);

template <Scalar T>
void validate_configuration(const MUConfiguration<T>& config);

template <Scalar T>
VerificationReport<T> verify_mu(const MUConfiguration<T>& config,
                                const VerifyOptions& options = {});

template <Scalar T>
MUConfiguration<T> rescale_config(const MUConfiguration<T>& config, const T& new_k,
                                  double tolerance = 1e-12);

enum class UnsignedClass { kNot, kPlus, kMinus };

template <Scalar T>
UnsignedClass is_unsigned_symplectic(const Matrix<T>& m, double tolerance = 1e-12);

// 2x2 matrix with m^t j m = sign j.
template <Scalar T>
class UnsignedSymplecticMatrix {
 public:
  // Throws kNotSymplectic unless m is unsigned symplectic.
  explicit UnsignedSymplecticMatrix(Matrix<T> m, double tolerance = 1e-12);

  const Matrix<T>& entries() const { return m_; }
  int sign() const { return sign_; }

  DirectionVector<T> apply(const DirectionVector<T>& a) const;

  friend UnsignedSymplecticMatrix operator*(const UnsignedSymplecticMatrix& a,
                                            const UnsignedSymplecticMatrix& b) {
    return UnsignedSymplecticMatrix(a.m_ * b.m_);
  }

 private:
  Matrix<T> m_;
  int sign_ = 1;
};

template <Scalar T>
MUConfiguration<T> apply_transform(const UnsignedSymplecticMatrix<T>& m,
                                   const MUConfiguration<T>& config,
                                   std::size_t factor_index);

// Mode conversion for exact configurations (search and equivalence run in
// floating point).
MUConfiguration<double> to_numeric(const MUConfiguration<QuadNum>& config);
MUConfiguration<double> to_numeric(const MUConfiguration<double>& config);

}  // namespace mubc

#endif  // MUBC_SYMPLECTIC_CORE_HPP_
