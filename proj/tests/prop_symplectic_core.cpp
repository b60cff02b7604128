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

#include "mubc/reproduce.hpp"
#include "oracle_kit.hpp"

using namespace mubc;

namespace {

// Random exact 2x2 unsigned symplectic matrix from shears, swaps and
// Pythagorean rotations.
Matrix<QuadNum> random_unsigned(std::mt19937_64& rng) {
  const QuadNum one = QuadNum::from_int(1, Ambient::golden());
  const QuadNum zero = QuadNum::from_int(0, Ambient::golden());
  Matrix<QuadNum> m = Matrix<QuadNum>::identity(2, one);
  for (int step = 0; step < 4; ++step) {
    Matrix<QuadNum> g = Matrix<QuadNum>::identity(2, one);
    switch (rng() % 4) {
      case 0: g(0, 1) = kit::random_quad(rng); break;
      case 1: g(1, 0) = kit::random_quad(rng); break;
      case 2: g = Matrix<QuadNum>{{zero, one}, {one, zero}}; break;
      default: {
        const QuadNum c(Rat(3, 5)), s(Rat(4, 5));
        g = Matrix<QuadNum>{{c, -s}, {s, c}};
      }
    }
    m = m * g;
  }
  return m;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("antisymmetry and bilinearity") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100; ++t) {
      const auto a = kit::random_exact_direction(rng), a2 = kit::random_exact_direction(rng),
                 b = kit::random_exact_direction(rng);
      CHECK(symp2(a, b) == -symp2(b, a));
      CHECK(symp2(a, a).is_zero());
      const QuadNum l = kit::random_nonzero_quad(rng), m = kit::random_nonzero_quad(rng);
      const QuadNum cq = l * a.Q() + m * a2.Q(), cp = l * a.P() + m * a2.P();
      if (cq.is_zero() && cp.is_zero()) continue;
      const DirectionVector<QuadNum> comb(cq, cp);
      CHECK(symp2(comb, b) == l * symp2(a, b) + m * symp2(a2, b));
      CHECK(symp2(b, comb) == l * symp2(b, a) + m * symp2(b, a2));
    }
  }
}

TEST_CASE("factorization cross-check") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + t % 4;
      const auto a = kit::random_product<QuadNum>(rng, n);
      const auto b = kit::random_product<QuadNum>(rng, n);
      CHECK(symp_product(a, b) == expanded_symplectic_form(a, b));

      const auto x = kit::random_product<double>(rng, n);
      const auto y = kit::random_product<double>(rng, n);
      const double f = symp_product(x, y);
      // scale = sum of |terms| in the expanded sum; scale / |f| is its
      // condition number.
      double scale = 1.0;
      for (std::size_t m = 0; m < n; ++m) {
        const auto& u = x.factors()[m];
        const auto& v = y.factors()[m];
        scale *= std::fabs(u.Q() * v.P()) + std::fabs(u.P() * v.Q());
      }
      const double e1 = std::fabs(expanded_symplectic_form(x, y) - f);
      const double e2 = std::fabs(kit::eigen_expanded_form(x, y) - f);
      CHECK(e1 <= 1e-14 * scale);
      CHECK(e2 <= 1e-14 * scale);
      if (scale <= 100.0 * std::fabs(f)) {
        CHECK(e1 <= 1e-12 * std::fabs(f));
        CHECK(e2 <= 1e-12 * std::fabs(f));
      }
    }
  }
}

TEST_CASE("transform invariance") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50; ++t) {
      const auto raw = random_unsigned(rng);
      const UnsignedSymplecticMatrix<QuadNum> m(raw);
      const QuadNum det = raw(0, 0) * raw(1, 1) - raw(0, 1) * raw(1, 0);
      CHECK(det == QuadNum::from_int(m.sign(), Ambient::golden()));
      const auto a = kit::random_exact_direction(rng), b = kit::random_exact_direction(rng);
      CHECK(abs_of(symp2(m.apply(a), m.apply(b))) == abs_of(symp2(a, b)));
      CHECK(symp2(m.apply(a), m.apply(b)) == QuadNum::from_int(m.sign(), Ambient::golden()) * symp2(a, b));
    }
  }
}

TEST_CASE("group closure") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 20; ++t) {
      const UnsignedSymplecticMatrix<QuadNum> a(random_unsigned(rng)), b(random_unsigned(rng));
      const auto ab = a * b;
      CHECK(ab.sign() == a.sign() * b.sign());
      CHECK(is_unsigned_symplectic(ab.entries()) != UnsignedClass::kNot);
    }
  }
}

TEST_CASE("scaling law and rescale") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + t % 3;
      const auto a = kit::random_product<QuadNum>(rng, n);
      const auto b = kit::random_product<QuadNum>(rng, n);
      const QuadNum l = kit::random_nonzero_quad(rng);
      auto scaled = [&](const ProductVector<QuadNum>& v) {
        auto f = v.factors();
        const std::size_t k = rng() % n;
        f[k] = DirectionVector<QuadNum>(l * f[k].Q(), l * f[k].P());
        return ProductVector<QuadNum>(f);
      };
      const auto sa = scaled(a), sb = scaled(b);
      CHECK(symp_product(sa, b) == l * symp_product(a, b));
      CHECK(symp_product(sa, sb) == l * l * symp_product(a, b));
    }
    // rescale_config re-verifies exactly at K' for square ratios.
    const auto g = fixtures::golden_five();
    const QuadNum root = kit::random_nonzero_quad(rng);
    const QuadNum k2 = root * root;
    const auto r = rescale_config(g, k2);
    CHECK(verify_mu(r).verdict);
    CHECK(r.targetK == k2);
  }
}

}  // TEST_SUITE
