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

#include "mubc/oracle_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mubc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_hbar(double hbar) {
  if (!(hbar > 0)) fail(ErrorCode::kInvalidTarget, "hbar must be positive");
}

double snap(double x) { return std::fabs(x) < 1e-14 ? 0.0 : x; }

// Value at eps = 0 of the polynomial through (x[i], y[i]).
double neville_at_zero(const double* x, const double* y, int n) {
  std::vector<double> p(y, y + n);
  for (int m = 1; m < n; ++m)
    for (int i = 0; i < n - m; ++i) {
      p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    }
  return p[0];
}

}  // namespace

StateKind ChirpState::kind() const {
  if (direction.Q() == 0.0) return StateKind::kPositionDelta;
  if (direction.P() == 0.0) return StateKind::kPlaneWave;
  return StateKind::kChirp;
}

ChirpPhase chirp_phase(const ChirpState& state) {
  check_hbar(state.hbar);
  const double Q = state.direction.Q();
  const double P = state.direction.P();
  if (Q == 0.0) fail(ErrorCode::kSpecialDirection, "position delta has no chirp form");
  ChirpPhase ph;
  ph.c2 = P / (2.0 * state.hbar * Q);
  ph.c1 = -state.alpha / (state.hbar * Q);
  // For P = 0 the constant alpha^2 / P is an infinite but q-independent
  // phase; the plane wave drops it.
  ph.c0 = P == 0.0 ? 0.0 : state.alpha * state.alpha / (2.0 * state.hbar * P * Q);
  ph.amplitude = 1.0 / std::sqrt(2.0 * kPi * state.hbar * std::fabs(Q));
  return ph;
}

std::complex<double> chirp_eval(const ChirpState& state, double q) {
  check_hbar(state.hbar);
  const double Q = state.direction.Q();
  const double P = state.direction.P();
  if (Q == 0.0) fail(ErrorCode::kSpecialDirection, "position delta has no chirp form");
  const double amp = 1.0 / std::sqrt(2.0 * kPi * state.hbar * std::fabs(Q));
  double phase;
  if (P == 0.0) {
    phase = -state.alpha * q / (state.hbar * Q);
  } else {
    const double shifted = q - state.alpha / P;
    phase = P * shifted * shifted / (2.0 * state.hbar * Q);
  }
  return std::polar(amp, phase);
}

namespace {

struct PairSetup {
  double a = 0.0;    // curvature of the product phase
  double qs = 0.0;   // stationary point
  double c_sq = 0.0;
};

PairSetup setup_pair(const ChirpState& a, const ChirpState& b) {
  if (a.hbar != b.hbar) fail(ErrorCode::kPreconditionFailed, "states use different hbar");
  if (a.kind() == StateKind::kPositionDelta || b.kind() == StateKind::kPositionDelta) {
    fail(ErrorCode::kSpecialDirection, "quadrature needs both states in position form");
  }
  if (symp2(a.direction, b.direction) == 0.0) {
    fail(ErrorCode::kParallelDirections, "directions are parallel");
  }
  const ChirpPhase pa = chirp_phase(a);
  const ChirpPhase pb = chirp_phase(b);
  PairSetup s;
  s.a = pa.c2 - pb.c2;
  if (s.a == 0.0) fail(ErrorCode::kParallelDirections, "directions are numerically parallel");
  s.qs = -(pa.c1 - pb.c1) / (2.0 * s.a);
  s.c_sq = pa.amplitude * pa.amplitude * pb.amplitude * pb.amplitude;
  return s;
}

// Adaptive bisection on top of the fixed 15-point Kronrod rule, with an
// absolute target (panels deep in the damped tail integrate to ~0, where a
// relative target would never be met).
template <class F>
std::complex<long double> integrate_panel(const F& f, double lo, double hi, double abs_tol,
                                          int depth) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const std::complex<double> v = gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &err);
  if (err <= abs_tol || depth == 0) return {v.real(), v.imag()};
  const double mid = 0.5 * (lo + hi);
  return integrate_panel(f, lo, mid, 0.5 * abs_tol, depth - 1) +
         integrate_panel(f, mid, hi, 0.5 * abs_tol, depth - 1);
}

// |I(eps)|^2 by panel-wise quadrature; panels end where the product phase
// advances by pi.
double regularized_overlap_sq(const ChirpState& a, const ChirpState& b, const PairSetup& s,
                              double eps, const QuadratureOptions& opts) {
  const double half_width = opts.window / std::sqrt(eps);
  const double abs_a = std::fabs(s.a);
  auto f = [&](double q) {
    const double u = q - s.qs;
    return std::conj(chirp_eval(b, q)) * chirp_eval(a, q) * std::exp(-eps * u * u);
  };
  // The integral has size C sqrt(pi / |a|). Panel errors are uncorrelated,
  // so each panel gets the target over sqrt(number of panels); anything
  // tighter sits below the rounding noise of the phases far out.
  const long panels = static_cast<long>(std::ceil(abs_a * half_width * half_width / kPi));
  const double scale = std::sqrt(s.c_sq * kPi / abs_a);
  const double tol = opts.local_tolerance * scale / std::sqrt(2.0 * (panels + 1));
  std::complex<long double> total = 0.0L;
  double prev = 0.0;
  for (long k = 1; k <= panels + 1; ++k) {
    const double u = k <= panels ? std::sqrt(k * kPi / abs_a) : half_width;
    if (u <= prev) continue;
    const double hi = std::min(u, half_width);
    total += integrate_panel(f, s.qs + prev, s.qs + hi, tol, 6);
    total += integrate_panel(f, s.qs - hi, s.qs - prev, tol, 6);
    prev = hi;
    if (prev >= half_width) break;
  }
  return static_cast<double>(std::norm(total));
}

}  // namespace

double fresnel_reference(const ChirpState& a, const ChirpState& b, double epsilon) {
  const PairSetup s = setup_pair(a, b);
  return s.c_sq * kPi / std::hypot(s.a, epsilon);
}

QuadratureResult overlap_quadrature(const ChirpState& a, const ChirpState& b,
                                    const QuadratureOptions& options) {
  const PairSetup s = setup_pair(a, b);
  const bool explicit_ladder = !options.epsilons.empty();
  std::vector<double> eps = options.epsilons;
  if (explicit_ladder) {
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!(eps[i] > 0) || (i > 0 && !(eps[i] < eps[i - 1]))) {
        fail(ErrorCode::kInvalidProblem, "epsilons must be positive and descending");
      }
    }
  }
  const int order = std::max(1, options.extrapolation_order);
  auto ladder = [&](int m) { return options.eps_scale * std::fabs(s.a) * std::ldexp(1.0, -m); };

  QuadratureResult out;
  std::vector<double> raw;
  auto run_levels = [&](std::size_t from, std::size_t to) {
    raw.resize(to);
    const bool parallel = options.exec == ExecPolicy::kParallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::size_t m = from; m < to; ++m) {
      raw[m] = regularized_overlap_sq(a, b, s, eps[m], options);
    }
    for (std::size_t m = from; m < to; ++m) {
      out.epsilonSequence.emplace_back(eps[m], raw[m]);
      const int n = order + 1;
      if (static_cast<int>(m) + 1 < n) continue;
      const std::size_t first = m + 1 - n;
      const double e = neville_at_zero(&eps[first], &raw[first], n);
      double err = std::fabs(e - raw[m]);
      if (!out.extrapolants.empty()) err = std::max(err, std::fabs(e - out.extrapolants.back()));
      out.extrapolants.push_back(e);
      out.errorHistory.push_back(err);
    }
  };

  if (!explicit_ladder) {
    for (int m = 0; m < options.levels; ++m) eps.push_back(ladder(m));
  }
  run_levels(0, eps.size());
  auto finish = [&] {
    if (out.extrapolants.empty()) {
      out.value = raw.back();
      out.errorEstimate = std::fabs(raw.back());
    } else {
      out.value = out.extrapolants.back();
      out.errorEstimate = out.errorHistory.back();
    }
    out.converged = std::isfinite(out.value) &&
                    out.errorEstimate <= options.relative_target * std::fabs(out.value);
  };
  finish();
  while (!out.converged && !explicit_ladder &&
         static_cast<int>(eps.size()) < options.max_levels) {
    eps.push_back(ladder(static_cast<int>(eps.size())));
    run_levels(eps.size() - 1, eps.size());
    finish();
  }
  return out;
}

DirectionVector<double> rotated_direction(double theta) {
  return DirectionVector<double>(snap(-std::sin(theta)), snap(std::cos(theta)));
}

std::vector<ScanEntry> pairwise_unbiased_scan(const std::vector<double>& thetas, double hbar,
                                              const QuadratureOptions& options) {
  check_hbar(hbar);
  std::vector<ScanEntry> table;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < thetas.size(); ++j) {
      ScanEntry e;
      e.i = i;
      e.j = j;
      e.theta_i = thetas[i];
      e.theta_j = thetas[j];
      const ChirpState si{rotated_direction(thetas[i]), 0.0, hbar};
      const ChirpState sj{rotated_direction(thetas[j]), 0.0, hbar};
      const double w = symp2(si.direction, sj.direction);
      if (std::fabs(w) < 1e-12) {
        e.parallel = true;
        e.method = "parallel";
        table.push_back(e);
        continue;
      }
      e.formula = overlap_magnitude_sq(si.direction, sj.direction, hbar);
      const bool di = si.kind() == StateKind::kPositionDelta;
      const bool dj = sj.kind() == StateKind::kPositionDelta;
      if (di || dj) {
        // |<q0|psi>|^2 / |P_delta| with q0 = alpha / P_delta.
        const ChirpState& wave = di ? sj : si;
        const ChirpState& delta = di ? si : sj;
        const double q0 = delta.alpha / delta.direction.P();
        e.oracle = std::norm(chirp_eval(wave, q0)) / std::fabs(delta.direction.P());
        e.method = "point";
        e.error_estimate = 0.0;
      } else {
        const QuadratureResult r = overlap_quadrature(si, sj, options);
        e.oracle = r.value;
        e.error_estimate = r.errorEstimate;
        e.converged = r.converged;
        e.method = "quadrature";
      }
      e.agree = e.converged &&
                std::fabs(e.oracle - e.formula) <= std::max(1e-5 * e.formula, e.error_estimate);
      table.push_back(e);
    }
  }
  return table;
}

}  // namespace mubc
