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

#include "oracle_kit.hpp"

using namespace mubc;

namespace {

// Singular or block-degenerate draws are skipped, not counted.
template <class F>
bool defined(F&& fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingularCayley || e.code() == ErrorCode::kDegenerateBlock) {
      return false;
    }
    throw;
  }
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("Cayley symmetry") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    int numeric = 0;
    while (numeric < 100) {
      const std::size_t n = 1 + rng() % 3;
      const auto m = kit::random_symplectic(rng, n, 1.0, 5);
      Matrix<double> c;
      if (!defined([&] { c = cayley_matrix(m); })) continue;
      ++numeric;
      const double scale = std::max(1.0, kit::to_eigen(c).cwiseAbs().maxCoeff());
      CHECK(max_abs_diff(c, c.transpose()) <= 1e-12 * scale);
    }
    const QuadNum one = QuadNum::from_int(1, Ambient::golden());
    int exact = 0;
    while (exact < 10) {
      const auto m = kit::random_symplectic(rng, 1 + rng() % 2, one, 5);
      Matrix<QuadNum> c;
      if (!defined([&] { c = cayley_matrix(m); })) continue;
      ++exact;
      CHECK(c == c.transpose());
    }
  }
}

TEST_CASE("overlap matches an Eigen evaluation") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    int done = 0;
    while (done < 20) {
      const auto m = kit::random_symplectic(rng, 1 + rng() % 3, 1.0, 5);
      double v = 0;
      if (!defined([&] { v = genmu_overlap_sq(m, 1.5); })) continue;
      ++done;
      CHECK(kit::rel_err(v, kit::eigen_genmu_overlap_sq(kit::to_eigen(m.stacked()), 1.5)) < 1e-9);
    }
  }
}

TEST_CASE("inverse symmetry") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    int done = 0;
    while (done < 20) {
      const auto m = kit::random_symplectic(rng, 1 + rng() % 2, 1.0, 5);
      double a = 0, b = 0;
      if (!defined([&] {
            a = genmu_overlap_sq(m, 1.0);
            b = genmu_overlap_sq(symplectic_inverse(m), 1.0);
          }))
        continue;
      ++done;
      CHECK(kit::rel_err(a, b) < 1e-10);
    }
  }
}

TEST_CASE("consistency with the symplectic product") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int done = 0;
    while (done < 20) {
      const double Q = u(rng), P = u(rng), mu = u(rng);
      if (std::fabs(Q) < 0.1) continue;
      double v = 0;
      if (!defined([&] { v = genmu_overlap_sq(special_m(Q, P, mu), 1.0); })) continue;
      ++done;
      const double want = overlap_magnitude_sq(DirectionVector<double>(Q, P),
                                               DirectionVector<double>(0.0, 1.0), 1.0);
      CHECK(kit::rel_err(v, want) < 1e-10);
    }
  }
}

TEST_CASE("composition depends only on M^-1 M'") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    int done = 0;
    while (done < 20) {
      const std::size_t n = 1 + rng() % 2;
      const auto m = kit::random_symplectic(rng, n, 1.0, 4);
      const auto mp = kit::random_symplectic(rng, n, 1.0, 4);
      const auto g = kit::random_symplectic(rng, n, 1.0, 3);
      double a = 0, b = 0;
      if (!defined([&] {
            a = compose_overlap_sq(m, mp, 1.0);
            b = compose_overlap_sq(g * m, g * mp, 1.0);
          }))
        continue;
      ++done;
      CHECK(kit::rel_err(a, b) < 1e-8);
    }
  }
}

TEST_CASE("generator products are exactly symplectic") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    const QuadNum one = QuadNum::from_int(1, Ambient::golden());
    for (int t = 0; t < 10; ++t) {
      const auto m = kit::random_symplectic(rng, 1 + t % 3, one, 6);
      CHECK(is_symplectic(m.stacked(), 0.0));
      CHECK(is_symplectic(m.interleaved(), 0.0, Ordering::kInterleaved));
    }
  }
}

}  // TEST_SUITE
