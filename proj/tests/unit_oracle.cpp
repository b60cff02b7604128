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

#include "mubc/oracle_numeric.hpp"
#include "oracle_kit.hpp"

using namespace mubc;

namespace {

constexpr double kPi = std::numbers::pi;

ChirpState chirp(double q, double p, double alpha = 0.0, double hbar = 1.0) {
  return ChirpState{DirectionVector<double>(q, p), alpha, hbar};
}

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

TEST_SUITE("oracle_numeric") {

TEST_CASE("state kinds") {
  CHECK(chirp(1, 1).kind() == StateKind::kChirp);
  CHECK(chirp(1, 0).kind() == StateKind::kPlaneWave);
  CHECK(chirp(0, 1).kind() == StateKind::kPositionDelta);
  CHECK(code_of([] { chirp_eval(chirp(0, 1), 0.3); }) == ErrorCode::kSpecialDirection);
  CHECK(code_of([] { chirp_eval(chirp(1, 1, 0, -1), 0.3); }) == ErrorCode::kInvalidTarget);
}

TEST_CASE("chirp values by hand") {
  // Q = 2, P = 3, alpha = 1: (4 pi)^-1/2 exp(i 3 (q - 1/3)^2 / 4).
  const double q = 0.7;
  const auto v = chirp_eval(chirp(2, 3, 1), q);
  const double ph = 3.0 * (q - 1.0 / 3) * (q - 1.0 / 3) / 4.0;
  const std::complex<double> want = std::polar(1.0 / std::sqrt(4 * kPi), ph);
  CHECK(std::abs(v - want) < 1e-15);
  // Plane wave: exp(-i alpha q / (hbar Q)).
  const auto w = chirp_eval(chirp(2, 0, 1), q);
  CHECK(std::abs(w - std::polar(1.0 / std::sqrt(4 * kPi), -q / 2)) < 1e-15);
}

TEST_CASE("phase coefficients reproduce the state") {
  const auto s = chirp(-1.3, 0.8, 0.4, 0.5);
  const auto ph = chirp_phase(s);
  for (double q : {-2.0, 0.0, 1.5}) {
    const auto v = std::polar(ph.amplitude, ph.c2 * q * q + ph.c1 * q + ph.c0);
    CHECK(std::abs(v - chirp_eval(s, q)) < 1e-13);
  }
}

TEST_CASE("quadrature on a rotated pair") {
  const auto a = ChirpState{rotated_direction(0.3), 0.0, 1.0};
  const auto b = ChirpState{rotated_direction(0.3 + kPi / 4), 0.0, 1.0};
  const auto r = overlap_quadrature(a, b);
  CHECK(r.converged);
  const double want = 1.0 / (2 * kPi * std::sin(kPi / 4));
  CHECK(kit::rel_err(r.value, want) < 1e-5);
  CHECK(r.errorEstimate < 1e-5 * want);
  CHECK(r.epsilonSequence.size() >= 9);
  // The sampled values follow the closed form at every eps.
  for (const auto& [eps, val] : r.epsilonSequence) {
    CHECK(kit::rel_err(val, fresnel_reference(a, b, eps)) < 1e-8);
  }
}

TEST_CASE("quadrature refusals") {
  CHECK(code_of([] { overlap_quadrature(chirp(1, 1), chirp(2, 2)); }) ==
        ErrorCode::kParallelDirections);
  CHECK(code_of([] { overlap_quadrature(chirp(0, 1), chirp(1, 1)); }) ==
        ErrorCode::kSpecialDirection);
  CHECK(code_of([] { overlap_quadrature(chirp(1, 1, 0, 1), chirp(1, -1, 0, 2)); }) ==
        ErrorCode::kPreconditionFailed);
}

TEST_CASE("plane waves integrate like chirps") {
  const auto r = overlap_quadrature(chirp(1, 0, 0.2), chirp(1, 1));
  CHECK(r.converged);
  CHECK(kit::rel_err(r.value, 1.0 / (2 * kPi)) < 1e-5);
}

TEST_CASE("serial and parallel quadrature agree") {
  QuadratureOptions s;
  s.exec = ExecPolicy::kSerial;
  QuadratureOptions p;
  p.exec = ExecPolicy::kParallel;
  const auto a = chirp(1.2, -0.5, 0.3), b = chirp(-0.7, 1.1, -0.2);
  const auto rs = overlap_quadrature(a, b, s);
  const auto rp = overlap_quadrature(a, b, p);
  CHECK(rs.value == rp.value);
  CHECK(rs.errorEstimate == rp.errorEstimate);
  REQUIRE(rs.epsilonSequence.size() == rp.epsilonSequence.size());
  for (std::size_t i = 0; i < rs.epsilonSequence.size(); ++i) {
    CHECK(rs.epsilonSequence[i].second == rp.epsilonSequence[i].second);
  }
}

TEST_CASE("explicit ladder") {
  QuadratureOptions o;
  o.epsilons = {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};
  const auto r = overlap_quadrature(chirp(1, 1), chirp(1, -1), o);
  CHECK(r.epsilonSequence.size() == 6);
  CHECK(r.epsilonSequence.front().first == 0.2);
  CHECK(kit::rel_err(r.value, 1.0 / (2 * kPi * 2)) < 1e-5);
}

TEST_CASE("rotated directions") {
  const auto d = rotated_direction(kPi / 2);
  CHECK(d.Q() == -1.0);
  CHECK(d.P() == 0.0);
  const auto e = rotated_direction(0.0);
  CHECK(e.Q() == 0.0);
  CHECK(e.P() == 1.0);
}

TEST_CASE("scan of rotated bases") {
  const auto table = pairwise_unbiased_scan({0.0, kPi / 3, 2 * kPi / 3, kPi / 3}, 1.0);
  CHECK(table.size() == 6);
  for (const auto& e : table) {
    if (e.i == 1 && e.j == 3) {
      CHECK(e.parallel);
      CHECK(e.method == "parallel");
      continue;
    }
    CHECK(e.agree);
    if (e.i == 0) {
      CHECK(e.method == "point");
    } else {
      CHECK(e.method == "quadrature");
    }
    const double want = 1.0 / (2 * kPi * std::fabs(std::sin(e.theta_j - e.theta_i)));
    CHECK(kit::rel_err(e.formula, want) < 1e-12);
    CHECK(kit::rel_err(e.oracle, want) < 1e-5);
  }
}

}  // TEST_SUITE
