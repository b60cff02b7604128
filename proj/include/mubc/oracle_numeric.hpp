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

// First-principles check of the overlap law: eigenstates of P q - Q p are
// written out in the position representation,
//
//   <q|a,alpha> = (2 pi hbar |Q|)^-1/2 exp(i P (q - alpha/P)^2 / (2 hbar Q)),
//
// and |<b,beta|a,alpha>|^2 is obtained by Gaussian-damped quadrature of
// conj(psi_b) psi_a followed by extrapolation of the damping to zero.
//
// Regularization. The product of two chirps is C exp(i(a q^2 + b q)) up to a
// unit constant, with a = 0 exactly when the directions are parallel. The
// damping factor exp(-eps (q - q_s)^2) is centred on the stationary point
// q_s = -b / (2a), which gives
//
//   |I(eps)|^2 = C^2 pi / sqrt(a^2 + eps^2),
//
// an even function of eps whose limit C^2 pi / |a| is 1/(2 pi hbar |a^t j b|).
// No division by state norms is applied: the raw |I(eps)|^2 already has the
// finite limit, whereas dividing by norms that diverge like eps^-1/2 would
// send it to zero. The eps ladder is scaled by |a| so that the extrapolation
// sees the same smooth curve for every pair.

#ifndef MUBC_ORACLE_NUMERIC_HPP_
#define MUBC_ORACLE_NUMERIC_HPP_

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mubc/exec.hpp"
#include "mubc/symplectic_core.hpp"

namespace mubc {

enum class StateKind {
  kChirp,          // Q != 0, P != 0
  kPlaneWave,      // P = 0: exp(-i alpha q / (hbar Q))
  kPositionDelta,  // Q = 0: |q = alpha / P>, no position-space function
};

struct ChirpState {
  DirectionVector<double> direction;
  double alpha = 0.0;
  double hbar = 1.0;

  StateKind kind() const;
};

// Throws kSpecialDirection for position deltas and kInvalidTarget for
// hbar <= 0.
std::complex<double> chirp_eval(const ChirpState& state, double q);

// Coefficients of the exponent i (c2 q^2 + c1 q + c0) and the modulus.
struct ChirpPhase {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double amplitude = 0.0;
};
ChirpPhase chirp_phase(const ChirpState& state);

struct QuadratureOptions {
  // Explicit descending damping ladder; empty selects
  // eps_m = eps_scale |a| 2^-m, m = 0 .. levels - 1.
  std::vector<double> epsilons;
  int levels = 9;
  int max_levels = 14;  // default ladder grows to this when not converged
  double eps_scale = 0.1;
  double window = 8.0;            // integrate |q - q_s| <= window / sqrt(eps)
  double local_tolerance = 1e-10;  // per-panel relative target
  double relative_target = 1e-6;  // converged when error <= target * value
  int extrapolation_order = 3;
  ExecPolicy exec = ExecPolicy::kParallel;
};

struct QuadratureResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  std::vector<std::pair<double, double>> epsilonSequence;  // (eps, |I(eps)|^2)
  // Extrapolant and its error estimate after each level (from the
  // (order+1)-th level on).
  std::vector<double> extrapolants;
  std::vector<double> errorHistory;
  bool converged = false;
};

// Throws kParallelDirections, kSpecialDirection (either state a position
// delta) or kPreconditionFailed (different hbar).
QuadratureResult overlap_quadrature(const ChirpState& a, const ChirpState& b,
                                    const QuadratureOptions& options = {});

// |I(eps)|^2 in closed form; eps = 0 is the limit C^2 pi / |a|.
double fresnel_reference(const ChirpState& a, const ChirpState& b, double epsilon = 0.0);

struct ScanEntry {
  std::size_t i = 0, j = 0;
  double theta_i = 0.0, theta_j = 0.0;
  double formula = 0.0;  // symplectic core
  double oracle = 0.0;
  double error_estimate = 0.0;
  std::string method;  // "quadrature", "point", or "parallel"
  bool parallel = false;
  bool converged = true;
  bool agree = false;
};

// Direction of the rotated position basis: (-sin theta, cos theta).
DirectionVector<double> rotated_direction(double theta);

// Pairwise overlaps of rotated bases by the symplectic formula and by the
// oracle. Pairs with a position delta are evaluated pointwise on the other
// state; coincident angles are flagged parallel.
std::vector<ScanEntry> pairwise_unbiased_scan(const std::vector<double>& thetas, double hbar,
                                              const QuadratureOptions& options = {});

}  // namespace mubc

#endif  // MUBC_ORACLE_NUMERIC_HPP_
