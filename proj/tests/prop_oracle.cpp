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

#include "mubc/oracle_numeric.hpp"
#include "oracle_kit.hpp"

using namespace mubc;

namespace {

constexpr double kHbars[] = {0.5, 1.0, 2.0};

// Components in [-2, 2] with |Q| >= 0.2 and the pair kept away from parallel.
std::pair<ChirpState, ChirpState> random_pair(std::mt19937_64& rng, double hbar) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double qa = u(rng), pa = u(rng), qb = u(rng), pb = u(rng);
    if (std::fabs(qa) < 0.2 || std::fabs(qb) < 0.2) continue;
    if (std::fabs(qa * pb - pa * qb) < 0.1) continue;
    return {ChirpState{{qa, pa}, u(rng), hbar}, ChirpState{{qb, pb}, u(rng), hbar}};
  }
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("flat magnitude") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    const auto [s, unused] = random_pair(rng, kHbars[seed % 3]);
    const double want = 1.0 / (2 * kit::kPi * s.hbar * std::fabs(s.direction.Q()));
    std::uniform_real_distribution<double> q(-50.0, 50.0);
    for (int t = 0; t < 1000; ++t) {
      CHECK(kit::rel_err(std::norm(chirp_eval(s, q(rng))), want) < 1e-14);
    }
  }
}

TEST_CASE("oracle agreement") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50; ++t) {
      const auto [a, b] = random_pair(rng, kHbars[t % 3]);
      const auto r = overlap_quadrature(a, b);
      const double formula = overlap_magnitude_sq(a.direction, b.direction, a.hbar);
      CAPTURE(t);
      CHECK(r.converged);
      CHECK(std::fabs(r.value - formula) <= std::max(1e-5 * formula, r.errorEstimate));
      // Extrapolation monotonicity down to the quadrature noise floor.
      const double floor = 1e-9 * r.value;
      for (std::size_t i = 1; i < r.errorHistory.size(); ++i) {
        CHECK((r.errorHistory[i] <= r.errorHistory[i - 1] || r.errorHistory[i] <= floor));
      }
    }
  }
}

TEST_CASE("hbar scaling") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    auto [a, b] = random_pair(rng, 1.0);
    double oracle_ref = 0, formula_ref = 0;
    for (double h : kHbars) {
      a.hbar = b.hbar = h;
      const double o = overlap_quadrature(a, b).value * h;
      const double f = overlap_magnitude_sq(a.direction, b.direction, h) * h;
      if (h == kHbars[0]) {
        oracle_ref = o;
        formula_ref = f;
        continue;
      }
      CHECK(kit::rel_err(o, oracle_ref) < 1e-5);
      CHECK(kit::rel_err(f, formula_ref) < 1e-12);
    }
  }
}

TEST_CASE("closed form equals the symplectic law") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100; ++t) {
      const auto [a, b] = random_pair(rng, kHbars[t % 3]);
      const double formula = overlap_magnitude_sq(a.direction, b.direction, a.hbar);
      CHECK(kit::rel_err(fresnel_reference(a, b), formula) < 1e-10);
      CHECK(kit::rel_err(fresnel_reference(b, a), fresnel_reference(a, b)) < 1e-14);
    }
  }
}

TEST_CASE("quadrature is symmetric in its arguments") {
  for (auto seed : kit::seeds()) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    const auto [a, b] = random_pair(rng, kHbars[seed % 3]);
    const auto ab = overlap_quadrature(a, b);
    const auto ba = overlap_quadrature(b, a);
    CHECK(kit::rel_err(ab.value, ba.value) < 1e-9);
  }
}

}  // TEST_SUITE
