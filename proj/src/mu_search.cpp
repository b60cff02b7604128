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

#include "mubc/mu_search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

namespace mubc {

// ---------------------------------------------------------------------------
// certify_no_fourth

namespace {

template <Scalar T>
bool matches_k(const T& product, const T& k, double tolerance) {
  if constexpr (kIsExact<T>) {
    (void)tolerance;
    return abs_of(product) == k;
  } else {
    return std::fabs(std::fabs(product) - k) <= tolerance * k;
  }
}

template <Scalar T>
bool is_negligible(const T& x, const T& k, double tolerance) {
  if constexpr (kIsExact<T>) {
    (void)k;
    (void)tolerance;
    return is_zero(x);
  } else {
    return std::fabs(x) <= tolerance * k;
  }
}

}  // namespace

template <Scalar T>
bool InfeasibilityCertificate<T>::valid() const {
  if (patterns.size() != 8) return false;
  for (const auto& rec : patterns) {
    if (!rec.inconsistent || rec.augmented_rank <= rec.coefficient_rank) return false;
  }
  return true;
}

template <Scalar T>
CertifyResult<T> certify_no_fourth(const DirectionVector<T>& a, const DirectionVector<T>& b,
                                   const DirectionVector<T>& c, const T& k,
                                   double tolerance) {
  for (const auto* x : {&a, &b, &c}) {
    check_same_context(x->Q(), k);
    check_same_context(x->P(), k);
  }
  if (sign_of(k) <= 0) fail(ErrorCode::kPreconditionFailed, "k must be positive");
  if (!matches_k(symp2(a, b), k, tolerance) || !matches_k(symp2(a, c), k, tolerance) ||
      !matches_k(symp2(b, c), k, tolerance)) {
    fail(ErrorCode::kPreconditionFailed, "input is not an MU triple at the given k");
  }

  const std::array<const DirectionVector<T>*, 3> xs{&a, &b, &c};
  const T det = symp2(a, b);  // determinant of the first two rows
  double rank_tol = 0.0;
  if constexpr (!kIsExact<T>) {
    double scale = std::fabs(k);
    for (const auto* x : xs) scale = std::max({scale, std::fabs(x->Q()), std::fabs(x->P())});
    rank_tol = tolerance * std::max(1.0, scale);
  }

  InfeasibilityCertificate<T> cert{a, b, c, k, {}};
  for (int mask = 0; mask < 8; ++mask) {
    SignPatternRecord<T> rec;
    for (int i = 0; i < 3; ++i) rec.signs[i] = (mask >> (2 - i)) & 1 ? -1 : 1;
    rec.augmented = Matrix<T>(3, 3, k);
    for (int i = 0; i < 3; ++i) {
      rec.augmented(i, 0) = xs[i]->P();
      rec.augmented(i, 1) = -xs[i]->Q();
      rec.augmented(i, 2) = from_int(k, rec.signs[i]) * k;
    }
    rec.coefficient_rank = matrix_rank(rec.augmented.block(0, 0, 3, 2), rank_tol);
    rec.augmented_rank = matrix_rank(rec.augmented, rank_tol);

    // Cramer on rows a, b: [P_a, -Q_a; P_b, -Q_b] (Q_d, P_d) = (s_a k, s_b k).
    const T ra = rec.augmented(0, 2);
    const T rb = rec.augmented(1, 2);
    const T qd = (a.Q() * rb - b.Q() * ra) / det;
    const T pd = (a.P() * rb - b.P() * ra) / det;
    rec.candidate.emplace(qd, pd);
    const T residual = c.P() * qd - c.Q() * pd - rec.augmented(2, 2);
    rec.third_residual = residual;
    rec.inconsistent = !is_negligible(residual, k, tolerance);
    if (!rec.inconsistent) {
      return Counterexample<T>{*rec.candidate, rec.signs};
    }
    cert.patterns.push_back(std::move(rec));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// find_equivalence

namespace {

void require_triple(const MUConfiguration<double>& config) {
  if (config.vectors.size() != 3 || config.modes() != 1) {
    fail(ErrorCode::kDimensionMismatch, "equivalence needs two N = 1 triples");
  }
  VerifyOptions opts;
  opts.tolerance = 1e-9;
  opts.infer_k = true;
  opts.exec = ExecPolicy::kSerial;
  if (!verify_mu(config, opts).verdict) {
    fail(ErrorCode::kPreconditionFailed, "equivalence input is not an MU triple");
  }
}

}  // namespace

std::optional<Equivalence> find_equivalence(const MUConfiguration<double>& a,
                                            const MUConfiguration<double>& b,
                                            double tolerance) {
  require_triple(a);
  require_triple(b);
  auto dir = [](const MUConfiguration<double>& c, std::size_t i) -> const DirectionVector<double>& {
    return c.vectors[i].factors()[0];
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    scale = std::max({scale, std::fabs(dir(b, i).Q()), std::fabs(dir(b, i).P())});
  }

  const DirectionVector<double>& a0 = dir(a, 0);
  const DirectionVector<double>& a1 = dir(a, 1);
  const DirectionVector<double>& a2 = dir(a, 2);
  const double det_a = symp2(a0, a1);
  // A^-1 for A = [a0 a1] (columns).
  const double ai00 = a1.P() / det_a, ai01 = -a1.Q() / det_a;
  const double ai10 = -a0.P() / det_a, ai11 = a0.Q() / det_a;

  std::optional<Equivalence> best;
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    for (int sign_mask = 0; sign_mask < 4; ++sign_mask) {
      const int s0 = (sign_mask & 2) ? -1 : 1;
      const int s1 = (sign_mask & 1) ? -1 : 1;
      const DirectionVector<double>& b0 = dir(b, perm[0]);
      const DirectionVector<double>& b1 = dir(b, perm[1]);
      const DirectionVector<double>& b2 = dir(b, perm[2]);
      // T = [s0 b0, s1 b1] A^-1
      const double c00 = s0 * b0.Q(), c01 = s1 * b1.Q();
      const double c10 = s0 * b0.P(), c11 = s1 * b1.P();
      Matrix<double> t{{c00 * ai00 + c01 * ai10, c00 * ai01 + c01 * ai11},
                       {c10 * ai00 + c11 * ai10, c10 * ai01 + c11 * ai11}};
      const double tq = t(0, 0) * a2.Q() + t(0, 1) * a2.P();
      const double tp = t(1, 0) * a2.Q() + t(1, 1) * a2.P();
      int s2 = 1;
      double res = std::max(std::fabs(tq - b2.Q()), std::fabs(tp - b2.P()));
      const double res_neg = std::max(std::fabs(tq + b2.Q()), std::fabs(tp + b2.P()));
      if (res_neg < res) {
        res = res_neg;
        s2 = -1;
      }
      res /= scale;
      if (best && !(res < best->residual)) continue;
      const double det_t = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
      Equivalence eq;
      eq.lambda = std::sqrt(std::fabs(det_t));
      eq.m = (1.0 / eq.lambda) * t;
      eq.det_sign = det_t > 0 ? 1 : -1;
      eq.permutation = perm;
      eq.signs = {s0, s1, s2};
      eq.residual = res;
      best = std::move(eq);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (best && best->residual <= tolerance) return best;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LogResidualObjective

LogResidualObjective::LogResidualObjective(MUConfiguration<double> seeds,
                                           std::size_t free_slots, std::vector<int> charts)
    : seeds_(std::move(seeds)), free_slots_(free_slots), charts_(std::move(charts)) {
  modes_ = seeds_.modes();
  if (modes_ == 0) fail(ErrorCode::kInvalidProblem, "search needs at least one seed vector");
  if (!(seeds_.targetK > 0)) fail(ErrorCode::kInvalidProblem, "target K must be positive");
  per_vector_ = modes_ + 1;
  dim_ = per_vector_ * free_slots_;
  if (charts_.size() != free_slots_ * (modes_ - 1)) {
    fail(ErrorCode::kInvalidProblem, "one chart per gauge-fixed factor expected");
  }
  log_k_ = std::log(seeds_.targetK);
}

double LogResidualObjective::value(std::span<const double> x) const {
  std::vector<double> scratch(dim_);
  return value_and_gradient(x, scratch);
}

double LogResidualObjective::value_and_gradient(std::span<const double> x,
                                                std::span<double> grad) const {
  if (x.size() != dim_ || grad.size() != dim_) {
    fail(ErrorCode::kDimensionMismatch, "objective argument size");
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  const std::size_t n_modes = modes_;

  // Components of free vector s in mode n.
  auto comp = [&](std::size_t s, std::size_t n, double& q, double& p) {
    const std::size_t base = s * per_vector_;
    if (n == 0) {
      q = x[base];
      p = x[base + 1];
    } else if (charts_[s * (n_modes - 1) + n - 1] == 0) {
      q = 1.0;
      p = x[base + 1 + n];
    } else {
      q = x[base + 1 + n];
      p = 1.0;
    }
  };
  // Chain rule from (dq, dp) of free vector s, mode n, to its coordinates.
  auto push = [&](std::size_t s, std::size_t n, double w, double dq, double dp) {
    const std::size_t base = s * per_vector_;
    if (n == 0) {
      grad[base] += w * dq;
      grad[base + 1] += w * dp;
    } else if (charts_[s * (n_modes - 1) + n - 1] == 0) {
      grad[base + 1 + n] += w * dp;
    } else {
      grad[base + 1 + n] += w * dq;
    }
  };

  double f = 0.0;
  std::vector<double> vq(n_modes), vp(n_modes), wq(n_modes), wp(n_modes), om(n_modes);
  for (std::size_t s = 0; s < free_slots_; ++s) {
    for (std::size_t n = 0; n < n_modes; ++n) comp(s, n, vq[n], vp[n]);
    const std::size_t partners = seeds_.vectors.size() + free_slots_;
    for (std::size_t other = 0; other < partners; ++other) {
      const bool other_free = other >= seeds_.vectors.size();
      const std::size_t s2 = other - seeds_.vectors.size();
      if (other_free && s2 <= s) continue;
      for (std::size_t n = 0; n < n_modes; ++n) {
        if (other_free) {
          comp(s2, n, wq[n], wp[n]);
        } else {
          const auto& fac = seeds_.vectors[other].factors()[n];
          wq[n] = fac.Q();
          wp[n] = fac.P();
        }
      }
      double log_abs = 0.0;
      for (std::size_t n = 0; n < n_modes; ++n) {
        om[n] = vq[n] * wp[n] - vp[n] * wq[n];
        if (om[n] == 0.0) return std::numeric_limits<double>::infinity();
        log_abs += std::log(std::fabs(om[n]));
      }
      const double r = log_abs - log_k_;
      f += r * r;
      const double w = 2.0 * r;
      for (std::size_t n = 0; n < n_modes; ++n) {
        push(s, n, w, wp[n] / om[n], -wq[n] / om[n]);
        if (other_free) push(s2, n, w, -vp[n] / om[n], vq[n] / om[n]);
      }
    }
  }
  return f;
}

std::vector<ProductVector<double>> LogResidualObjective::decode(
    std::span<const double> x) const {
  std::vector<ProductVector<double>> out;
  for (std::size_t s = 0; s < free_slots_; ++s) {
    std::vector<DirectionVector<double>> factors;
    const std::size_t base = s * per_vector_;
    factors.emplace_back(x[base], x[base + 1]);
    for (std::size_t n = 1; n < modes_; ++n) {
      const double t = x[base + 1 + n];
      if (charts_[s * (modes_ - 1) + n - 1] == 0) {
        factors.emplace_back(1.0, t);
      } else {
        factors.emplace_back(t, 1.0);
      }
    }
    out.emplace_back(std::move(factors));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

std::string_view outcome_name(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::kExtended: return "extended";
    case SearchOutcome::kNoImprovement: return "no-improvement";
    case SearchOutcome::kExhausted: return "exhausted";
  }
  return "unknown";
}

std::vector<QuadNum> golden_lattice_values(int height, const Ambient& ambient) {
  if (height < 0) fail(ErrorCode::kInvalidProblem, "lattice height must be non-negative");
  const int pmax = std::max(height, 1);
  std::vector<QuadNum> out;
  for (int q = -height; q <= height; ++q)
    for (int p = -pmax; p <= pmax; ++p) out.emplace_back(Rat(p), Rat(q), ambient);
  return out;
}

namespace {

struct LocalResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  long iterations = 0;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// BFGS on the inverse Hessian with Armijo backtracking.
LocalResult minimize_bfgs(const LogResidualObjective& obj, std::vector<double> x, long budget) {
  const std::size_t n = x.size();
  LocalResult out;
  std::vector<double> g(n), gn(n), d(n), xn(n), s(n), y(n), hy(n);
  double f = obj.value_and_gradient(x, g);
  out.evaluations = 1;
  std::vector<double> h(n * n, 0.0);
  auto reset_h = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
  };
  reset_h();

  while (std::isfinite(f) && out.evaluations < budget && f > 1e-30) {
    if (std::sqrt(dot(g, g)) < 1e-10) break;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc -= h[i * n + j] * g[j];
      d[i] = acc;
    }
    double gd = dot(g, d);
    if (!(gd < 0.0)) {
      reset_h();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      gd = -dot(g, g);
    }
    const double dnorm = std::sqrt(dot(d, d));
    double alpha = 1.0;
    double fn = 0.0;
    bool accepted = false;
    while (out.evaluations < budget) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + alpha * d[i];
      fn = obj.value_and_gradient(xn, gn);
      ++out.evaluations;
      if (std::isfinite(fn) && fn <= f + 1e-4 * alpha * gd) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
      if (alpha * dnorm < 1e-14) break;
    }
    if (!accepted) break;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300) {
      // H <- (I - r s y^t) H (I - r y s^t) + r s s^t
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += h[i * n + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                          (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
    x.swap(xn);
    g.swap(gn);
    f = fn;
    ++out.iterations;
    if (std::sqrt(dot(s, s)) < 1e-14) break;
  }
  out.x = std::move(x);
  out.f = f;
  return out;
}

std::vector<double> flatten(const std::vector<ProductVector<double>>& vs) {
  std::vector<double> out;
  for (const auto& v : vs)
    for (const auto& f : v.factors()) {
      out.push_back(f.Q());
      out.push_back(f.P());
    }
  return out;
}

void fill_pair_table(SearchReport& report, const MUConfiguration<double>& config) {
  VerifyOptions opts;
  opts.exec = ExecPolicy::kSerial;
  const auto verification = verify_mu(config, opts);
  report.K = config.targetK;
  report.residual = verification.max_abs_residual;
  report.pair_table.clear();
  for (const auto& rec : verification.pairs) {
    report.pair_table.push_back(
        {rec.i, rec.j, rec.magnitude, std::fabs(rec.magnitude - config.targetK)});
  }
}

SearchReport search_reals(const MUConfiguration<double>& seeds, std::size_t free_slots,
                          const SearchOptions& options) {
  SearchReport report;
  const std::size_t modes = seeds.modes();
  const int restarts = std::max(options.restarts, 1);
  const long total_budget = options.budget > 0 ? options.budget : 200000;
  const long per_restart = std::max(1L, total_budget / restarts);

  struct Start {
    std::vector<int> charts;
    std::vector<double> x0;
  };
  // Starting points are drawn serially so they do not depend on scheduling.
  std::vector<Start> starts(restarts);
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::bernoulli_distribution chart(0.5);
    starts[r].charts.resize(free_slots * (modes - 1));
    for (auto& c : starts[r].charts) c = chart(rng) ? 1 : 0;
    starts[r].x0.resize(free_slots * (modes + 1));
    for (auto& v : starts[r].x0) v = coord(rng);
  }

  std::vector<LocalResult> results(restarts);
  const bool parallel = options.exec == ExecPolicy::kParallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int r = 0; r < restarts; ++r) {
    LogResidualObjective obj(seeds, free_slots, starts[r].charts);
    results[r] = minimize_bfgs(obj, starts[r].x0, per_restart);
  }

  int best = -1;
  std::vector<ProductVector<double>> best_vectors;
  std::vector<double> best_key;
  for (int r = 0; r < restarts; ++r) {
    report.evaluations += results[r].evaluations;
    report.iterations += results[r].iterations;
    if (!std::isfinite(results[r].f)) continue;
    LogResidualObjective obj(seeds, free_slots, starts[r].charts);
    std::vector<ProductVector<double>> vs;
    try {
      vs = obj.decode(results[r].x);
    } catch (const Error&) {
      continue;  // a zero factor cannot label a family
    }
    std::vector<double> key = flatten(vs);
    if (best < 0 || results[r].f < results[best].f ||
        (results[r].f == results[best].f && key < best_key)) {
      best = r;
      best_vectors = std::move(vs);
      best_key = std::move(key);
    }
  }
  report.restarts_run = restarts;
  if (best < 0) {
    fill_pair_table(report, seeds);
    report.outcome = SearchOutcome::kNoImprovement;
    return report;
  }
  MUConfiguration<double> full = seeds;
  for (const auto& v : best_vectors) full.vectors.push_back(v);
  report.candidates = best_vectors;
  fill_pair_table(report, full);
  report.outcome = report.residual <= options.success_tolerance * seeds.targetK
                       ? SearchOutcome::kExtended
                       : SearchOutcome::kNoImprovement;
  return report;
}

std::vector<QuadNum> sign_normalized(const std::vector<QuadNum>& v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (quad_sign(x) > 0) return v;
    std::vector<QuadNum> out;
    out.reserve(v.size());
    for (const auto& y : v) out.push_back(-y);
    return out;
  }
  return v;
}

bool canonical_direction(const QuadNum& q, const QuadNum& p) {
  const int sq = quad_sign(q);
  return sq > 0 || (sq == 0 && quad_sign(p) > 0);
}

std::vector<DirectionVector<QuadNum>> lattice_directions(int height, const Ambient& ambient) {
  const auto values = golden_lattice_values(height, ambient);
  std::vector<DirectionVector<QuadNum>> out;
  for (const auto& q : values)
    for (const auto& p : values)
      if (canonical_direction(q, p)) out.emplace_back(q, p);
  return out;
}

class LatticeSearch {
 public:
  LatticeSearch(const MUConfiguration<QuadNum>& seeds, int height, const SearchOptions& options)
      : seeds_(seeds),
        k_(seeds.targetK),
        neg_k_(-seeds.targetK),
        modes_(seeds.modes()),
        options_(options),
        dirs_(lattice_directions(height, seeds.targetK.ambient())) {
    budget_ = options.budget > 0 ? options.budget : std::numeric_limits<long>::max();
  }

  long evaluations() const { return evaluations_; }
  bool budget_hit() const { return budget_hit_; }

  // Every lattice product vector extending the seeds, in enumeration order.
  std::vector<ProductVector<QuadNum>> first_level_hits() {
    const std::size_t nd = dirs_.size();
    // w[i][n][f] = symp2(direction f, seed i factor n)
    std::vector<std::vector<std::vector<QuadNum>>> w(seeds_.vectors.size());
    for (std::size_t i = 0; i < seeds_.vectors.size(); ++i) {
      w[i].resize(modes_);
      for (std::size_t n = 0; n < modes_; ++n) {
        w[i][n].reserve(nd);
        for (const auto& d : dirs_) w[i][n].push_back(symp2(d, seeds_.vectors[i].factors()[n]));
      }
    }
    long double total = 1.0L;
    for (std::size_t n = 0; n < modes_; ++n) total *= static_cast<long double>(nd);
    if (total > 9e18L) fail(ErrorCode::kLimitExceeded, "lattice too large to enumerate");
    const long long count = static_cast<long long>(total);

    std::vector<ProductVector<QuadNum>> hits;
    std::vector<std::vector<QuadNum>> keys;
    const long long block = 1 << 16;
    std::vector<char> ok;
    const bool parallel = options_.exec == ExecPolicy::kParallel;
    for (long long start = 0; start < count; start += block) {
      if (evaluations_ >= budget_) {
        budget_hit_ = true;
        break;
      }
      const long long len =
          std::min({block, count - start, static_cast<long long>(budget_ - evaluations_)});
      ok.assign(static_cast<std::size_t>(len), 0);
#pragma omp parallel for schedule(static) if (parallel)
      for (long long t = 0; t < len; ++t) {
        long long idx = start + t;
        std::size_t f[kMaxModes];
        for (std::size_t n = 0; n < modes_; ++n) {
          f[n] = static_cast<std::size_t>(idx % static_cast<long long>(nd));
          idx /= static_cast<long long>(nd);
        }
        bool good = true;
        for (std::size_t i = 0; good && i < w.size(); ++i) {
          QuadNum s = w[i][0][f[0]];
          for (std::size_t n = 1; n < modes_ && !s.is_zero(); ++n) s = s * w[i][n][f[n]];
          good = (s == k_) || (s == neg_k_);
        }
        ok[static_cast<std::size_t>(t)] = good;
      }
      evaluations_ += len;
      for (long long t = 0; t < len; ++t) {
        if (!ok[static_cast<std::size_t>(t)]) continue;
        ProductVector<QuadNum> v = decode(start + t);
        auto key = sign_normalized(v.expanded());
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
        keys.push_back(std::move(key));
        hits.push_back(std::move(v));
      }
      if (len < std::min(block, count - start)) {
        budget_hit_ = true;
        break;
      }
    }
    return hits;
  }

  // First set of `slots` mutually compatible hits, in lexicographic order.
  bool choose(const std::vector<ProductVector<QuadNum>>& hits, std::size_t from,
              std::size_t slots, std::vector<std::size_t>& chosen) {
    if (slots == 0) return true;
    for (std::size_t h = from; h < hits.size(); ++h) {
      bool good = true;
      for (std::size_t c : chosen) {
        ++evaluations_;
        const QuadNum s = symp_product(hits[h], hits[c]);
        if (s != k_ && s != neg_k_) {
          good = false;
          break;
        }
      }
      if (!good) continue;
      chosen.push_back(h);
      if (choose(hits, h + 1, slots - 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

 private:
  ProductVector<QuadNum> decode(long long idx) const {
    std::vector<DirectionVector<QuadNum>> factors;
    const long long nd = static_cast<long long>(dirs_.size());
    for (std::size_t n = 0; n < modes_; ++n) {
      factors.push_back(dirs_[static_cast<std::size_t>(idx % nd)]);
      idx /= nd;
    }
    return ProductVector<QuadNum>(std::move(factors));
  }

  const MUConfiguration<QuadNum>& seeds_;
  QuadNum k_;
  QuadNum neg_k_;
  std::size_t modes_;
  SearchOptions options_;
  std::vector<DirectionVector<QuadNum>> dirs_;
  long budget_ = 0;
  long evaluations_ = 0;
  bool budget_hit_ = false;
};

SearchReport search_lattice(const MUConfiguration<QuadNum>& seeds, std::size_t free_slots,
                            int height, const SearchOptions& options) {
  if (!seeds.targetK.ambient().real_embeddable()) {
    fail(ErrorCode::kNotRealEmbeddable, "lattice search needs a real ambient");
  }
  VerifyOptions vopts;
  vopts.exec = options.exec;
  if (!verify_mu(seeds, vopts).verdict) {
    fail(ErrorCode::kPreconditionFailed, "seed vectors are not MU at the target K");
  }
  SearchReport report;
  LatticeSearch search(seeds, height, options);
  report.lattice_hits = search.first_level_hits();
  if (report.lattice_hits.size() > options.max_hits)
    report.lattice_hits.erase(report.lattice_hits.begin() + options.max_hits,
                              report.lattice_hits.end());

  std::vector<std::size_t> chosen;
  const bool found = search.choose(report.lattice_hits, 0, free_slots, chosen);
  report.evaluations = search.evaluations();
  report.restarts_run = 1;

  MUConfiguration<QuadNum> full = seeds;
  if (found) {
    for (std::size_t c : chosen) {
      report.exact_candidates.push_back(report.lattice_hits[c]);
      full.vectors.push_back(report.lattice_hits[c]);
    }
  }
  MUConfiguration<double> numeric = to_numeric(full);
  for (std::size_t i = seeds.vectors.size(); i < numeric.vectors.size(); ++i) {
    report.candidates.push_back(numeric.vectors[i]);
  }
  // Residuals from the exact products, so an exact hit reports exactly 0.
  VerifyOptions exact_opts;
  exact_opts.exec = ExecPolicy::kSerial;
  const auto verification = verify_mu(full, exact_opts);
  report.K = to_real(full.targetK);
  report.residual = 0.0;
  for (const auto& rec : verification.pairs) {
    const double r = to_real(abs_of(rec.magnitude - full.targetK));
    report.pair_table.push_back({rec.i, rec.j, to_real(rec.magnitude), r});
    report.residual = std::max(report.residual, r);
  }
  if (found) {
    report.outcome = SearchOutcome::kExtended;
  } else {
    report.outcome = search.budget_hit() ? SearchOutcome::kNoImprovement
                                         : SearchOutcome::kExhausted;
  }
  return report;
}

}  // namespace

SearchReport search_extension(const SearchProblem& problem, const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (problem.objective != "log-residual") {
    fail(ErrorCode::kInvalidProblem, "unknown objective '" + problem.objective + "'");
  }
  const MUConfiguration<double> numeric_seeds =
      std::visit([](const auto& c) { return to_numeric(c); }, problem.seeds);
  if (numeric_seeds.vectors.empty()) {
    fail(ErrorCode::kInvalidProblem, "search needs at least one seed vector");
  }
  validate_configuration(numeric_seeds);
  if (numeric_seeds.modes() > kMaxModes) fail(ErrorCode::kLimitExceeded, "too many modes");

  SearchReport report;
  if (problem.free_slots == 0) {
    fill_pair_table(report, numeric_seeds);
    report.outcome = SearchOutcome::kExhausted;
  } else if (problem.domain == CoefficientDomain::kReals) {
    report = search_reals(numeric_seeds, problem.free_slots, options);
  } else {
    const auto* exact = std::get_if<MUConfiguration<QuadNum>>(&problem.seeds);
    if (exact == nullptr) {
      fail(ErrorCode::kInvalidProblem, "golden-lattice search needs exact seeds");
    }
    report = search_lattice(*exact, problem.free_slots, problem.height, options);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// ---------------------------------------------------------------------------
// enumerate_triples_n1

std::vector<MUConfiguration<QuadNum>> enumerate_triples_n1(const QuadNum& k, int height,
                                                            ExecPolicy exec) {
  if (quad_sign(k) <= 0) fail(ErrorCode::kInvalidTarget, "k must be positive");
  const Ambient& ambient = k.ambient();
  const auto dirs = lattice_directions(height, ambient);
  const QuadNum neg_k = -k;
  const int pmax = std::max(height, 1);
  auto in_lattice = [&](const QuadNum& x) {
    return x.p() >= -pmax && x.p() <= pmax && x.q() >= -height && x.q() <= height &&
           denominator(x.p()) == 1 && denominator(x.q()) == 1;
  };

  // Pairs (a, b), a < b, at |symp2| = k; per-row buckets keep the order fixed.
  const std::size_t nd = dirs.size();
  std::vector<std::vector<std::size_t>> partners(nd);
  const bool parallel = exec == ExecPolicy::kParallel;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::size_t a = 0; a < nd; ++a) {
    for (std::size_t b = a + 1; b < nd; ++b) {
      const QuadNum s = symp2(dirs[a], dirs[b]);
      if (s == k || s == neg_k) partners[a].push_back(b);
    }
  }

  std::vector<MUConfiguration<QuadNum>> reps;
  std::vector<MUConfiguration<double>> reps_numeric;
  for (std::size_t a = 0; a < nd; ++a) {
    for (std::size_t b : partners[a]) {
      for (int sgn : {1, -1}) {
        QuadNum cq = sgn > 0 ? dirs[a].Q() + dirs[b].Q() : dirs[a].Q() - dirs[b].Q();
        QuadNum cp = sgn > 0 ? dirs[a].P() + dirs[b].P() : dirs[a].P() - dirs[b].P();
        if (!in_lattice(cq) || !in_lattice(cp)) continue;
        if (!canonical_direction(cq, cp)) {
          cq = -cq;
          cp = -cp;
        }
        MUConfiguration<QuadNum> triple;
        triple.targetK = k;
        triple.vectors.emplace_back(std::vector<DirectionVector<QuadNum>>{dirs[a]});
        triple.vectors.emplace_back(std::vector<DirectionVector<QuadNum>>{dirs[b]});
        triple.vectors.emplace_back(std::vector<DirectionVector<QuadNum>>{{cq, cp}});
        const MUConfiguration<double> numeric = to_numeric(triple);
        bool known = false;
        for (const auto& r : reps_numeric) {
          if (find_equivalence(r, numeric, 1e-9)) {
            known = true;
            break;
          }
        }
        if (known) continue;
        reps.push_back(std::move(triple));
        reps_numeric.push_back(numeric);
      }
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------

#define MUBC_INSTANTIATE(T)                                                                \
  template struct InfeasibilityCertificate<T>;                                             \
  template CertifyResult<T> certify_no_fourth(const DirectionVector<T>&,                   \
                                              const DirectionVector<T>&,                   \
                                              const DirectionVector<T>&, const T&, double);

MUBC_INSTANTIATE(double)
MUBC_INSTANTIATE(QuadNum)

#undef MUBC_INSTANTIATE

}  // namespace mubc
