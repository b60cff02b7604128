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

// Small dense row-major matrices over either scalar mode. Sizes here are at
// most 2^8, so everything is straightforward O(n^3) elimination.

#ifndef MUBC_MATRIX_HPP_
#define MUBC_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "mubc/error.hpp"
#include "mubc/scalar.hpp"

namespace mubc {

template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::kDimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols, const T& like) {
    return Matrix(rows, cols, zero_like(like));
  }
  static Matrix identity(std::size_t n, const T& like) {
    Matrix m = zeros(n, n, like);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(like);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // An element carrying the ambient context (exact mode needs it to build
  // zeros and ones). Matrices are never empty where this is called.
  const T& like() const { return data_.front(); }

  Matrix transpose() const {
    Matrix t(cols_, rows_, like());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
      fail(ErrorCode::kDimensionMismatch, "block outside matrix");
    }
    Matrix b(nr, nc, like());
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
      fail(ErrorCode::kDimensionMismatch, "block outside matrix");
    }
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::kDimensionMismatch, "matrix product shape");
    Matrix out = zeros(a.rows_, b.cols_, a.like());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = s * x;
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      fail(ErrorCode::kDimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Largest absolute entry of a - b, as a double.
template <Scalar T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  const Matrix<T> d = a - b;
  double worst = 0.0;
  for (const T& x : d.data()) {
    const double v = std::fabs(to_real(x));
    if (v > worst) worst = v;
  }
  return worst;
}

template <Scalar T>
T determinant(Matrix<T> a) {
  if (!a.square()) fail(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  T det = one_like(a.like());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_w = pivot_weight(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double w = pivot_weight(a(r, col));
      if (w > best_w) {
        best = r;
        best_w = w;
      }
    }
    if (best_w == 0.0) return zero_like(a.like());
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(best, c), a(col, c));
      det = -det;
    }
    const T pivot = a(col, col);
    det = det * pivot;
    const T inv = reciprocal(pivot);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const T factor = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) = a(r, c) - factor * a(col, c);
    }
  }
  return det;
}

// Gauss-Jordan inverse; nullopt when a pivot column is exactly zero.
template <Scalar T>
std::optional<Matrix<T>> inverse(Matrix<T> a) {
  if (!a.square()) fail(ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n, a.like());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_w = pivot_weight(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double w = pivot_weight(a(r, col));
      if (w > best_w) {
        best = r;
        best_w = w;
      }
    }
    if (best_w == 0.0) return std::nullopt;
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(best, c), a(col, c));
        std::swap(inv(best, c), inv(col, c));
      }
    }
    const T pinv = reciprocal(a(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * pinv;
      inv(col, c) = inv(col, c) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const T factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - factor * a(col, c);
        inv(r, c) = inv(r, c) - factor * inv(col, c);
      }
    }
  }
  return inv;
}

// Row rank by elimination. Numeric mode treats |x| <= tol as zero.
template <Scalar T>
std::size_t matrix_rank(Matrix<T> a, double tol = 0.0) {
  std::size_t rank = 0;
  const std::size_t rows = a.rows();
  for (std::size_t col = 0; col < a.cols() && rank < rows; ++col) {
    std::size_t best = rank;
    double best_w = pivot_weight(a(rank, col));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double w = pivot_weight(a(r, col));
      if (w > best_w) {
        best = r;
        best_w = w;
      }
    }
    if (best_w <= tol) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(rank, c));
    const T pinv = reciprocal(a(rank, col));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (is_zero(a(r, col))) continue;
      const T factor = a(r, col) * pinv;
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) = a(r, c) - factor * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

// Kronecker product a (x) b.
template <Scalar T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols(), a.like());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace mubc

#endif  // MUBC_MATRIX_HPP_
