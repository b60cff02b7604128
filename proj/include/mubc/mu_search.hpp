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

// Certificates and searches over MU configurations of product vectors:
//  - certify_no_fourth: exhaustive sign-pattern proof that an N = 1 triple
//    admits no fourth direction with the same unsigned products;
//  - find_equivalence: unsigned symplectic map (plus scaling) between two
//    N = 1 triples;
//  - search_extension: multi-start local search (reals) or exact lattice
//    enumeration (golden field) for additional vectors;
//  - enumerate_triples_n1: all exact lattice triples at a given constant.

#ifndef MUBC_MU_SEARCH_HPP_
#define MUBC_MU_SEARCH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mubc/exec.hpp"
#include "mubc/matrix.hpp"
#include "mubc/symplectic_core.hpp"

namespace mubc {

// ---------------------------------------------------------------------------
// Fourth-vector infeasibility (N = 1)

template <Scalar T>
struct SignPatternRecord {
  std::array<int, 3> signs{};
  // Rows (P_x, -Q_x | s_x k) for x = a, b, c: the conditions d^t j x = s_x k.
  Matrix<T> augmented;
  std::size_t coefficient_rank = 0;
  std::size_t augmented_rank = 0;
  // Unique solution of the first two equations, when they are independent.
  std::optional<DirectionVector<T>> candidate;
  // (row c) . candidate - s_c k; non-zero means the third equation fails.
  std::optional<T> third_residual;
  bool inconsistent = false;
};

template <Scalar T>
struct InfeasibilityCertificate {
  DirectionVector<T> a, b, c;
  T k;
  std::vector<SignPatternRecord<T>> patterns;  // all 8 sign triples

  bool valid() const;
};

template <Scalar T>
struct Counterexample {
  DirectionVector<T> d;
  std::array<int, 3> signs{};
};

template <Scalar T>
using CertifyResult = std::variant<InfeasibilityCertificate<T>, Counterexample<T>>;

// Throws kPreconditionFailed unless a, b, c pairwise have |symp2| = k.
// Numeric mode uses `tolerance` (relative to k) for every zero test.
template <Scalar T>
CertifyResult<T> certify_no_fourth(const DirectionVector<T>& a, const DirectionVector<T>& b,
                                   const DirectionVector<T>& c, const T& k,
                                   double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Equivalence of N = 1 triples

struct Equivalence {
  Matrix<double> m;  // |det m| = 1
  int det_sign = 1;  // +1: symplectic, -1: symplectic times j
  double lambda = 1.0;
  // lambda * m * a_i = signs[i] * b_{permutation[i]}
  std::array<std::size_t, 3> permutation{};
  std::array<int, 3> signs{};
  double residual = 0.0;
};

// Throws kDimensionMismatch unless both are N = 1 triples, and
// kPreconditionFailed unless both verify (tolerance 1e-9, inferred K).
std::optional<Equivalence> find_equivalence(const MUConfiguration<double>& a,
                                            const MUConfiguration<double>& b,
                                            double tolerance = 1e-10);

// ---------------------------------------------------------------------------
// Extension search

enum class CoefficientDomain { kReals, kGoldenLattice };
enum class SearchOutcome { kExtended, kNoImprovement, kExhausted };

std::string_view outcome_name(SearchOutcome outcome);

struct SearchProblem {
  std::variant<MUConfiguration<double>, MUConfiguration<QuadNum>> seeds;
  std::size_t free_slots = 1;
  CoefficientDomain domain = CoefficientDomain::kReals;
  int height = 3;
  std::string objective = "log-residual";
};

struct SearchOptions {
  long budget = 200000;  // objective evaluations (reals) or candidates (lattice)
  int restarts = 16;
  std::uint64_t seed = 0;
  ExecPolicy exec = ExecPolicy::kParallel;
  double success_tolerance = 1e-9;  // relative to K
  std::size_t max_hits = 1000;
};

struct SearchPairRow {
  std::size_t i = 0, j = 0;
  double magnitude = 0.0;
  double residual = 0.0;  // | |product| - K |
};

struct SearchReport {
  // Free vectors of the best configuration found (seeds excluded).
  std::vector<ProductVector<double>> candidates;
  // Lattice mode: the same vectors in exact form, plus every vector that
  // extends the seeds alone (deduplicated, capped at max_hits).
  std::vector<ProductVector<QuadNum>> exact_candidates;
  std::vector<ProductVector<QuadNum>> lattice_hits;
  double K = 0.0;
  double residual = 0.0;
  std::vector<SearchPairRow> pair_table;
  long evaluations = 0;
  long iterations = 0;
  int restarts_run = 0;
  double wall_seconds = 0.0;
  SearchOutcome outcome = SearchOutcome::kExhausted;
};

SearchReport search_extension(const SearchProblem& problem, const SearchOptions& options);

// f(x) = sum over pairs involving a free vector of (log|product| - log K)^2.
//
// Each free vector is encoded by 2 + (N - 1) coordinates: mode 0 keeps both
// components (it carries the overall scale), every other mode is gauge fixed
// to (1, t) (chart 0) or (t, 1) (chart 1).
class LogResidualObjective {
 public:
  LogResidualObjective(MUConfiguration<double> seeds, std::size_t free_slots,
                       std::vector<int> charts);

  std::size_t dimension() const { return dim_; }
  std::size_t modes() const { return modes_; }
  const std::vector<int>& charts() const { return charts_; }

  double value(std::span<const double> x) const;
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;
  std::vector<ProductVector<double>> decode(std::span<const double> x) const;

 private:
  MUConfiguration<double> seeds_;
  std::size_t free_slots_;
  std::size_t modes_;
  std::size_t per_vector_;
  std::size_t dim_;
  std::vector<int> charts_;  // free_slots * (N - 1) entries
  double log_k_;
};

// ---------------------------------------------------------------------------
// Lattice enumeration

// Values p + q R with |q| <= H and |p| <= max(H, 1); H = 0 keeps the
// rationals -1, 0, 1.
std::vector<QuadNum> golden_lattice_values(int height, const Ambient& ambient);

// All N = 1 triples with lattice components whose pairwise unsigned products
// equal k, one representative per equivalence class.
std::vector<MUConfiguration<QuadNum>> enumerate_triples_n1(
    const QuadNum& k, int height, ExecPolicy exec = ExecPolicy::kParallel);

}  // namespace mubc

#endif  // MUBC_MU_SEARCH_HPP_
