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

#include "mubc/symplectic_core.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace mubc {

int max_threads() { return omp_get_max_threads(); }

template <Scalar T>
DirectionVector<T>::DirectionVector(T q_component, T p_component)
    : q_(std::move(q_component)), p_(std::move(p_component)) {
  check_same_context(q_, p_);
  if (is_zero(q_) && is_zero(p_)) {
    fail(ErrorCode::kInvalidDirection, "the zero vector labels no basis");
  }
}

template <Scalar T>
ProductVector<T>::ProductVector(std::vector<DirectionVector<T>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) fail(ErrorCode::kDimensionMismatch, "a product vector needs N >= 1");
  if (factors_.size() > kMaxModes) {
    fail(ErrorCode::kLimitExceeded,
         "N = " + std::to_string(factors_.size()) + " exceeds the limit of " +
             std::to_string(kMaxModes));
  }
  const T& like = factors_.front().Q();
  for (const auto& f : factors_) check_same_context(like, f.Q());
  // Kronecker expansion: index bit (N-1-n) selects Q (0) or P (1) of factor n.
  expanded_.assign(1, one_like(like));
  for (const auto& f : factors_) {
    std::vector<T> next;
    next.reserve(expanded_.size() * 2);
    for (const T& e : expanded_) {
      next.push_back(e * f.Q());
      next.push_back(e * f.P());
    }
    expanded_ = std::move(next);
  }
}

template <Scalar T>
T symp2(const DirectionVector<T>& a, const DirectionVector<T>& b) {
  check_same_context(a.Q(), b.Q());
  return a.Q() * b.P() - a.P() * b.Q();
}

template <Scalar T>
T symp_product(const ProductVector<T>& a, const ProductVector<T>& b) {
  if (a.modes() != b.modes()) {
    fail(ErrorCode::kDimensionMismatch, "product vectors have different N");
  }
  T result = symp2(a.factors()[0], b.factors()[0]);
  for (std::size_t n = 1; n < a.modes(); ++n) {
    result = result * symp2(a.factors()[n], b.factors()[n]);
  }
  return result;
}

template <Scalar T>
Matrix<T> build_jN(std::size_t modes, const T& like) {
  if (modes == 0) fail(ErrorCode::kDimensionMismatch, "N must be positive");
  if (modes > kMaxModes) {
    fail(ErrorCode::kLimitExceeded, "j_N for N = " + std::to_string(modes));
  }
  const T zero = zero_like(like);
  const T one = one_like(like);
  const Matrix<T> j{{zero, -one}, {one, zero}};
  Matrix<T> out = j;
  for (std::size_t n = 1; n < modes; ++n) out = kronecker(out, j);
  return out;
}

template <Scalar T>
T expanded_symplectic_form(const ProductVector<T>& a, const ProductVector<T>& b) {
  if (a.modes() != b.modes()) {
    fail(ErrorCode::kDimensionMismatch, "product vectors have different N");
  }
  const Matrix<T> jn = build_jN(a.modes(), a.expanded().front());
  // b^t j_N a, so that the result matches the factor-wise symp2 for every N.
  const auto& x = b.expanded();
  const auto& y = a.expanded();
  T sum = zero_like(x.front());
  for (std::size_t r = 0; r < jn.rows(); ++r) {
    if (is_zero(x[r])) continue;
    for (std::size_t c = 0; c < jn.cols(); ++c) {
      if (is_zero(jn(r, c))) continue;
      sum = sum + x[r] * jn(r, c) * y[c];
    }
  }
  return sum;
}

double overlap_constant(double K, std::size_t modes, double hbar) {
  return std::pow(2.0 * std::numbers::pi * hbar, -0.5 * static_cast<double>(modes)) /
         std::sqrt(K);
}

namespace {

double overlap_from_product(double product, std::size_t modes, double hbar) {
  if (!(hbar > 0)) fail(ErrorCode::kInvalidTarget, "hbar must be positive");
  if (product == 0.0) {
    fail(ErrorCode::kParallelDirections,
         "zero symplectic product: the families share eigenstates");
  }
  return std::pow(2.0 * std::numbers::pi * hbar, -static_cast<double>(modes)) /
         std::fabs(product);
}

}  // namespace

template <Scalar T>
double overlap_magnitude_sq(const ProductVector<T>& a, const ProductVector<T>& b,
                            double hbar) {
  const T s = symp_product(a, b);
  if (is_zero(s)) overlap_from_product(0.0, a.modes(), hbar);
  return overlap_from_product(to_real(s), a.modes(), hbar);
}

template <Scalar T>
double overlap_magnitude_sq(const DirectionVector<T>& a, const DirectionVector<T>& b,
                            double hbar) {
  const T s = symp2(a, b);
  if (is_zero(s)) overlap_from_product(0.0, 1, hbar);
  return overlap_from_product(to_real(s), 1, hbar);
}

template <Scalar T>
void validate_configuration(const MUConfiguration<T>& config) {
  if (!(config.hbar > 0)) fail(ErrorCode::kInvalidTarget, "hbar must be positive");
  if (config.vectors.empty()) return;
  const std::size_t n = config.modes();
  const T& like = config.vectors.front().factors().front().Q();
  check_same_context(like, config.targetK);
  for (const auto& v : config.vectors) {
    if (v.modes() != n) fail(ErrorCode::kDimensionMismatch, "vectors have different N");
    check_same_context(like, v.factors().front().Q());
  }
}

template <Scalar T>
VerificationReport<T> verify_mu(const MUConfiguration<T>& config,
                                const VerifyOptions& options) {
  validate_configuration(config);
  const auto& vs = config.vectors;
  VerificationReport<T> report;
  report.K = config.targetK;
  if (vs.size() < 2) {
    report.verdict = false;
    return report;
  }

  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) index.emplace_back(i, j);

  std::vector<T> products(index.size(), zero_like(config.targetK));
  const long count = static_cast<long>(index.size());
  if (options.exec == ExecPolicy::kParallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) {
      products[k] = symp_product(vs[index[k].first], vs[index[k].second]);
    }
  } else {
    for (long k = 0; k < count; ++k) {
      products[k] = symp_product(vs[index[k].first], vs[index[k].second]);
    }
  }

  if (options.infer_k) report.K = abs_of(products.front());
  const T& K = report.K;
  const double k_real = to_real(K);
  bool all_equal = sign_of(K) > 0;
  report.pairs.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    PairRecord<T> rec{index[k].first, index[k].second, products[k], abs_of(products[k])};
    rec.parallel = is_zero(products[k]);
    const double abs_residual = std::fabs(to_real(rec.magnitude - K));
    rec.deviation = k_real > 0 ? abs_residual / k_real : abs_residual;
    if constexpr (kIsExact<T>) {
      if (rec.magnitude != K) all_equal = false;
    } else {
      if (!(rec.deviation <= options.tolerance)) all_equal = false;
    }
    report.has_parallel_pair = report.has_parallel_pair || rec.parallel;
    report.max_deviation = std::max(report.max_deviation, rec.deviation);
    report.max_abs_residual = std::max(report.max_abs_residual, abs_residual);
    report.pairs.push_back(std::move(rec));
  }
  report.verdict = all_equal && !report.has_parallel_pair;
  return report;
}

template <Scalar T>
MUConfiguration<T> rescale_config(const MUConfiguration<T>& config, const T& new_k,
                                  double tolerance) {
  validate_configuration(config);
  check_same_context(config.targetK, new_k);
  if (sign_of(new_k) <= 0) fail(ErrorCode::kInvalidTarget, "target K must be positive");
  VerifyOptions opts;
  opts.tolerance = tolerance;
  if (!verify_mu(config, opts).verdict) {
    fail(ErrorCode::kPreconditionFailed, "configuration is not MU at its target K");
  }
  // Pairwise products are bilinear, so scaling every vector by lambda scales
  // them by lambda^2: lambda = sqrt(K'/K).
  const auto lambda = sqrt_of(new_k * reciprocal(config.targetK));
  if (!lambda) {
    fail(ErrorCode::kNotRepresentable,
         "sqrt(K'/K) is not an element of the scalar field");
  }
  MUConfiguration<T> out = config;
  out.targetK = new_k;
  for (auto& v : out.vectors) {
    auto factors = v.factors();
    factors[0] = DirectionVector<T>(*lambda * factors[0].Q(), *lambda * factors[0].P());
    v = ProductVector<T>(std::move(factors));
  }
  return out;
}

template <Scalar T>
UnsignedClass is_unsigned_symplectic(const Matrix<T>& m, double tolerance) {
  if (m.rows() != 2 || m.cols() != 2) {
    fail(ErrorCode::kDimensionMismatch, "unsigned symplectic test needs a 2x2 matrix");
  }
  const Matrix<T> j = build_jN(1, m(0, 0));
  const Matrix<T> form = m.transpose() * j * m;
  if constexpr (kIsExact<T>) {
    if (form == j) return UnsignedClass::kPlus;
    if (form == -j) return UnsignedClass::kMinus;
  } else {
    if (max_abs_diff(form, j) <= tolerance) return UnsignedClass::kPlus;
    if (max_abs_diff(form, -j) <= tolerance) return UnsignedClass::kMinus;
  }
  return UnsignedClass::kNot;
}

template <Scalar T>
UnsignedSymplecticMatrix<T>::UnsignedSymplecticMatrix(Matrix<T> m, double tolerance)
    : m_(std::move(m)) {
  switch (is_unsigned_symplectic(m_, tolerance)) {
    case UnsignedClass::kPlus: sign_ = 1; break;
    case UnsignedClass::kMinus: sign_ = -1; break;
    case UnsignedClass::kNot:
      fail(ErrorCode::kNotSymplectic, "m^t j m is neither j nor -j");
  }
}

template <Scalar T>
DirectionVector<T> UnsignedSymplecticMatrix<T>::apply(const DirectionVector<T>& a) const {
  return DirectionVector<T>(m_(0, 0) * a.Q() + m_(0, 1) * a.P(),
                            m_(1, 0) * a.Q() + m_(1, 1) * a.P());
}

template <Scalar T>
MUConfiguration<T> apply_transform(const UnsignedSymplecticMatrix<T>& m,
                                   const MUConfiguration<T>& config,
                                   std::size_t factor_index) {
  validate_configuration(config);
  if (factor_index >= config.modes()) {
    fail(ErrorCode::kDimensionMismatch, "factor index " + std::to_string(factor_index) +
                                            " out of range for N = " +
                                            std::to_string(config.modes()));
  }
  MUConfiguration<T> out = config;
  for (auto& v : out.vectors) {
    auto factors = v.factors();
    factors[factor_index] = m.apply(factors[factor_index]);
    v = ProductVector<T>(std::move(factors));
  }
  return out;
}

MUConfiguration<double> to_numeric(const MUConfiguration<QuadNum>& config) {
  MUConfiguration<double> out;
  out.hbar = config.hbar;
  out.targetK = to_real(config.targetK);
  for (const auto& v : config.vectors) {
    std::vector<DirectionVector<double>> f;
    for (const auto& d : v.factors()) f.emplace_back(to_real(d.Q()), to_real(d.P()));
    out.vectors.emplace_back(std::move(f));
  }
  return out;
}

MUConfiguration<double> to_numeric(const MUConfiguration<double>& config) { return config; }

#define MUBC_INSTANTIATE(T)                                                              \
  template class DirectionVector<T>;                                                     \
  template class ProductVector<T>;                                                       \
  template class UnsignedSymplecticMatrix<T>;                                            \
  template T symp2(const DirectionVector<T>&, const DirectionVector<T>&);                \
  template T symp_product(const ProductVector<T>&, const ProductVector<T>&);             \
  template T expanded_symplectic_form(const ProductVector<T>&, const ProductVector<T>&); \
  template Matrix<T> build_jN(std::size_t, const T&);                                    \
  template double overlap_magnitude_sq(const ProductVector<T>&, const ProductVector<T>&, \
                                       double);                                          \
  template double overlap_magnitude_sq(const DirectionVector<T>&,                        \
                                       const DirectionVector<T>&, double);               \
  template void validate_configuration(const MUConfiguration<T>&);                       \
  template VerificationReport<T> verify_mu(const MUConfiguration<T>&,                    \
                                           const VerifyOptions&);                        \
  template MUConfiguration<T> rescale_config(const MUConfiguration<T>&, const T&,        \
                                             double);                                    \
  template UnsignedClass is_unsigned_symplectic(const Matrix<T>&, double);               \
  template MUConfiguration<T> apply_transform(const UnsignedSymplecticMatrix<T>&,        \
                                              const MUConfiguration<T>&, std::size_t);

MUBC_INSTANTIATE(double)
MUBC_INSTANTIATE(QuadNum)

#undef MUBC_INSTANTIATE

}  // namespace mubc
