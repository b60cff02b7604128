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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mubc/reproduce.hpp"
#include "mubc/symplectic_core.hpp"
#include "oracle_kit.hpp"

using namespace mubc;

namespace {

DirectionVector<double> dv(double q, double p) { return {q, p}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kParseError;
}

}  // namespace

TEST_SUITE("symplectic_core") {

TEST_CASE("position and momentum") {
  const double v = overlap_magnitude_sq(dv(0, 1), dv(1, 0), 1.0);
  CHECK(v == doctest::Approx(1.0 / (2 * std::numbers::pi)).epsilon(1e-15));
  CHECK(symp2(dv(0, 1), dv(1, 0)) == -1.0);
  CHECK(symp2(dv(1, 0), dv(0, 1)) == 1.0);
  CHECK(overlap_magnitude_sq(dv(0, 1), dv(1, 0), 2.0) == doctest::Approx(v / 2));
}

TEST_CASE("overlap constant") {
  // k^2 = (2 pi hbar)^-N / K.
  CHECK(std::pow(overlap_constant(1.0, 2, 1.0), 2) ==
        doctest::Approx(1.0 / std::pow(2 * std::numbers::pi, 2)));
  CHECK(std::pow(overlap_constant(std::sqrt(3.0) / 2, 1, 1.0), 2) ==
        doctest::Approx(1.0 / (std::numbers::pi * std::sqrt(3.0))));
}

TEST_CASE("bundled configurations verify") {
  CHECK(verify_mu(fixtures::asymmetric_triple()).verdict);
  CHECK(verify_mu(fixtures::symmetric_triple()).verdict);
  CHECK(verify_mu(fixtures::golden_five()).verdict);
  auto unhalved = verify_mu(fixtures::symmetric_triple_unhalved(), {.infer_k = true});
  CHECK_FALSE(unhalved.verdict);
}

TEST_CASE("golden five pairs are exactly one") {
  const auto report = verify_mu(fixtures::golden_five());
  REQUIRE(report.pairs.size() == 10);
  for (const auto& p : report.pairs) {
    CHECK(p.magnitude == QuadNum::from_int(1, Ambient::golden()));
    CHECK(p.deviation == 0.0);
  }
}

TEST_CASE("parallel pairs are their own outcome") {
  MUConfiguration<double> c;
  c.vectors = {ProductVector<double>({dv(1, 2)}), ProductVector<double>({dv(2, 4)})};
  c.targetK = 1.0;
  auto r = verify_mu(c);
  CHECK(r.has_parallel_pair);
  CHECK(r.pairs[0].parallel);
  CHECK_FALSE(r.verdict);
  CHECK(code_of([&] { overlap_magnitude_sq(dv(1, 2), dv(2, 4), 1.0); }) ==
        ErrorCode::kParallelDirections);
}

TEST_CASE("infer-K takes the first pair") {
  auto c = to_numeric(fixtures::asymmetric_triple());
  c.targetK = 5.0;
  CHECK_FALSE(verify_mu(c).verdict);
  auto r = verify_mu(c, {.infer_k = true});
  CHECK(r.verdict);
  CHECK(r.K == 1.0);
}

TEST_CASE("numeric tolerance") {
  auto c = to_numeric(fixtures::asymmetric_triple());
  auto f = c.vectors[2].factors();
  f[0] = dv(1.0 + 1e-10, 1.0);
  c.vectors[2] = ProductVector<double>(f);
  CHECK_FALSE(verify_mu(c).verdict);
  CHECK(verify_mu(c, {.tolerance = 1e-9}).verdict);
}

TEST_CASE("input validation") {
  CHECK(code_of([] { DirectionVector<double>(0.0, 0.0); }) == ErrorCode::kInvalidDirection);
  CHECK(code_of([] { ProductVector<double>(std::vector<DirectionVector<double>>{}); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code_of([] {
          ProductVector<double>(std::vector<DirectionVector<double>>(9, dv(1, 0)));
        }) == ErrorCode::kLimitExceeded);
  CHECK(code_of([] {
          symp_product(ProductVector<double>({dv(1, 0)}),
                       ProductVector<double>({dv(1, 0), dv(0, 1)}));
        }) == ErrorCode::kDimensionMismatch);
  auto c = to_numeric(fixtures::asymmetric_triple());
  c.hbar = 0.0;
  CHECK(code_of([&] { verify_mu(c); }) == ErrorCode::kInvalidTarget);
}

TEST_CASE("rescale in the field") {
  const auto g = fixtures::golden_five();
  const QuadNum four = QuadNum::from_int(4, Ambient::golden());
  const auto r = rescale_config(g, four);
  CHECK(r.targetK == four);
  CHECK(verify_mu(r).verdict);
  CHECK(code_of([&] { rescale_config(g, QuadNum::from_int(2, Ambient::golden())); }) ==
        ErrorCode::kNotRepresentable);
  CHECK(code_of([&] { rescale_config(g, QuadNum::from_int(-1, Ambient::golden())); }) ==
        ErrorCode::kInvalidTarget);
}

TEST_CASE("unsigned symplectic matrices") {
  Matrix<double> swap{{0.0, 1.0}, {1.0, 0.0}};
  Matrix<double> shear{{1.0, 2.0}, {0.0, 1.0}};
  Matrix<double> bad{{2.0, 0.0}, {0.0, 1.0}};
  CHECK(is_unsigned_symplectic(swap) == UnsignedClass::kMinus);
  CHECK(is_unsigned_symplectic(shear) == UnsignedClass::kPlus);
  CHECK(is_unsigned_symplectic(bad) == UnsignedClass::kNot);
  CHECK(code_of([&] { UnsignedSymplecticMatrix<double>{bad}; }) == ErrorCode::kNotSymplectic);

  UnsignedSymplecticMatrix<double> s(swap), h(shear);
  CHECK((s * h).sign() == -1);
  CHECK((s * s).sign() == 1);
  auto moved = apply_transform(h, to_numeric(fixtures::asymmetric_triple()), 0);
  CHECK(verify_mu(moved).verdict);
  CHECK(code_of([&] { apply_transform(h, to_numeric(fixtures::asymmetric_triple()), 1); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("j_N is a Kronecker power of j") {
  const auto j2 = build_jN<double>(2, 1.0);
  CHECK(j2.rows() == 4);
  const Matrix<double> j{{0.0, -1.0}, {1.0, 0.0}};
  CHECK(j2 == kronecker(j, j));
}

TEST_CASE("serial and parallel verify agree") {
  std::mt19937_64 rng(7);
  MUConfiguration<double> c;
  for (int i = 0; i < 40; ++i) c.vectors.push_back(kit::random_product<double>(rng, 3));
  c.targetK = 1.0;
  auto a = verify_mu(c, {.exec = ExecPolicy::kSerial});
  auto b = verify_mu(c, {.exec = ExecPolicy::kParallel});
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    CHECK(a.pairs[k].product == b.pairs[k].product);
  }
  CHECK(a.max_abs_residual == b.max_abs_residual);

  auto ea = verify_mu(fixtures::golden_five(), {.exec = ExecPolicy::kSerial});
  auto eb = verify_mu(fixtures::golden_five(), {.exec = ExecPolicy::kParallel});
  for (std::size_t k = 0; k < ea.pairs.size(); ++k) {
    CHECK(ea.pairs[k].product == eb.pairs[k].product);
  }
}

}  // TEST_SUITE
