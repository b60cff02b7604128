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

#include <algorithm>
#include <cmath>

#include "mubc/mu_search.hpp"
#include "mubc/reproduce.hpp"
#include "oracle_kit.hpp"

using namespace mubc;

namespace {

template <class T>
InfeasibilityCertificate<T> certificate_for(const MUConfiguration<T>& c) {
  const auto& v = c.vectors;
  auto r = certify_no_fourth(v[0].factors()[0], v[1].factors()[0], v[2].factors()[0], c.targetK);
  REQUIRE(std::holds_alternative<InfeasibilityCertificate<T>>(r));
  return std::get<InfeasibilityCertificate<T>>(r);
}

MUConfiguration<QuadNum> golden_four() {
  auto g = fixtures::golden_five();
  g.vectors.pop_back();
  return g;
}

}  // namespace

TEST_SUITE("mu_search") {

TEST_CASE("no fourth vector: exact triples") {
  for (const auto& c : {fixtures::asymmetric_triple(), fixtures::symmetric_triple()}) {
    const auto cert = certificate_for(c);
    CHECK(cert.valid());
    CHECK(cert.patterns.size() == 8);
    for (const auto& p : cert.patterns) CHECK(p.inconsistent);
    CHECK(kit::recheck_certificate(cert));
  }
}

TEST_CASE("no fourth vector: numeric triple") {
  const auto cert = certificate_for(to_numeric(fixtures::symmetric_triple()));
  CHECK(cert.valid());
  CHECK(kit::recheck_certificate(cert, 1e-12));
}

TEST_CASE("certify rejects a non-triple") {
  try {
    certify_no_fourth<double>({0.0, 1.0}, {1.0, 0.0}, {1.0, 2.0}, 1.0);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPreconditionFailed);
  }
}

TEST_CASE("equivalence of the two triples") {
  const auto a = to_numeric(fixtures::asymmetric_triple());
  const auto b = to_numeric(fixtures::symmetric_triple());
  const auto eq = find_equivalence(a, b);
  REQUIRE(eq.has_value());
  CHECK(eq->residual < 1e-10);
  CHECK(std::fabs(std::fabs(eq->m(0, 0) * eq->m(1, 1) - eq->m(0, 1) * eq->m(1, 0)) - 1.0) <
        1e-12);
  // lambda m a_i = s_i b_perm(i), checked here directly.
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& x = a.vectors[i].factors()[0];
    const auto& y = b.vectors[eq->permutation[i]].factors()[0];
    const double mq = eq->lambda * (eq->m(0, 0) * x.Q() + eq->m(0, 1) * x.P());
    const double mp = eq->lambda * (eq->m(1, 0) * x.Q() + eq->m(1, 1) * x.P());
    CHECK(std::fabs(mq - eq->signs[i] * y.Q()) < 1e-10);
    CHECK(std::fabs(mp - eq->signs[i] * y.P()) < 1e-10);
  }
  // And back.
  const auto back = find_equivalence(b, a);
  REQUIRE(back.has_value());
  CHECK(back->residual < 1e-10);
}

TEST_CASE("equivalence needs MU triples") {
  auto bad = to_numeric(fixtures::symmetric_triple_unhalved());
  try {
    find_equivalence(to_numeric(fixtures::asymmetric_triple()), bad);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPreconditionFailed);
  }
}

TEST_CASE("golden lattice values") {
  const Ambient& g = Ambient::golden();
  auto v0 = golden_lattice_values(0, g);
  CHECK(v0.size() == 3);
  CHECK(golden_lattice_values(1, g).size() == 9);
  CHECK(golden_lattice_values(3, g).size() == 49);
  auto v2 = golden_lattice_values(2, g);
  CHECK(std::count(v2.begin(), v2.end(), parse_quad("2 - R")) == 1);
}

TEST_CASE("lattice search recovers the fifth golden vector") {
  SearchProblem problem;
  problem.seeds = golden_four();
  problem.domain = CoefficientDomain::kGoldenLattice;
  problem.height = 2;
  SearchOptions opts;
  opts.seed = 1;
  opts.budget = 0;
  const auto report = search_extension(problem, opts);
  CHECK(report.outcome == SearchOutcome::kExtended);
  CHECK(report.residual == 0.0);
  const auto fifth = fixtures::golden_five().vectors.back();
  bool found = false;
  for (const auto& h : report.lattice_hits) {
    auto cfg = golden_four();
    cfg.vectors.push_back(h);
    CHECK(verify_mu(cfg).verdict);
    const bool same = kit::same_product(h, fifth);
    found = found || same;
  }
  CHECK(found);
}

TEST_CASE("lattice search: serial equals parallel") {
  SearchProblem problem;
  problem.seeds = golden_four();
  problem.domain = CoefficientDomain::kGoldenLattice;
  problem.height = 2;
  SearchOptions s{.budget = 0, .seed = 1, .exec = ExecPolicy::kSerial};
  SearchOptions p{.budget = 0, .seed = 1, .exec = ExecPolicy::kParallel};
  const auto a = search_extension(problem, s);
  const auto b = search_extension(problem, p);
  REQUIRE(a.lattice_hits.size() == b.lattice_hits.size());
  for (std::size_t i = 0; i < a.lattice_hits.size(); ++i) CHECK(a.lattice_hits[i] == b.lattice_hits[i]);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("lattice budget") {
  SearchProblem problem;
  problem.seeds = golden_four();
  problem.domain = CoefficientDomain::kGoldenLattice;
  problem.height = 2;
  const auto r = search_extension(problem, {.budget = 10, .seed = 1});
  CHECK(r.outcome == SearchOutcome::kNoImprovement);
  CHECK(r.evaluations <= 10);
}

TEST_CASE("lattice search exhausts when nothing fits") {
  // The five golden vectors admit no sixth at H = 1.
  SearchProblem problem;
  problem.seeds = fixtures::golden_five();
  problem.domain = CoefficientDomain::kGoldenLattice;
  problem.height = 1;
  const auto r = search_extension(problem, {.budget = 0, .seed = 1});
  CHECK(r.outcome == SearchOutcome::kExhausted);
  CHECK(r.lattice_hits.empty());
}

TEST_CASE("real search on the triple finds nothing") {
  SearchProblem problem;
  problem.seeds = to_numeric(fixtures::asymmetric_triple());
  SearchOptions opts{.budget = 40000, .restarts = 8, .seed = 3};
  const auto r = search_extension(problem, opts);
  CHECK(r.outcome == SearchOutcome::kNoImprovement);
  CHECK(r.residual > 1e-3);
  CHECK(r.restarts_run == 8);
  CHECK(r.evaluations <= 40000 + 64);
}

TEST_CASE("real search extends a pair to a triple") {
  SearchProblem problem;
  auto seeds = to_numeric(fixtures::asymmetric_triple());
  seeds.vectors.pop_back();
  problem.seeds = seeds;
  const auto r = search_extension(problem, {.budget = 20000, .restarts = 4, .seed = 9});
  CHECK(r.outcome == SearchOutcome::kExtended);
  REQUIRE(r.candidates.size() == 1);
  auto cfg = seeds;
  cfg.vectors.push_back(r.candidates[0]);
  CHECK(verify_mu(cfg, {.tolerance = 1e-8}).verdict);
}

TEST_CASE("multi-start is deterministic and policy independent") {
  SearchProblem problem;
  auto seeds = to_numeric(fixtures::golden_five());
  seeds.vectors.erase(seeds.vectors.begin() + 2, seeds.vectors.end());
  problem.seeds = seeds;
  problem.free_slots = 2;
  SearchOptions a{.budget = 6000, .restarts = 4, .seed = 42, .exec = ExecPolicy::kSerial};
  SearchOptions b = a;
  b.exec = ExecPolicy::kParallel;
  const auto r1 = search_extension(problem, a);
  const auto r2 = search_extension(problem, a);
  const auto r3 = search_extension(problem, b);
  CHECK(r1.residual == r2.residual);
  CHECK(r1.residual == r3.residual);
  CHECK(r1.evaluations == r3.evaluations);
  REQUIRE(r1.candidates.size() == r3.candidates.size());
  for (std::size_t i = 0; i < r1.candidates.size(); ++i) {
    CHECK(r1.candidates[i].expanded() == r3.candidates[i].expanded());
  }
}

TEST_CASE("search rejects bad problems") {
  SearchProblem problem;
  problem.seeds = to_numeric(fixtures::asymmetric_triple());
  problem.free_slots = 0;
  // Nothing to place: the seeds are reported as they stand.
  const auto none = search_extension(problem, {.seed = 1});
  CHECK(none.outcome == SearchOutcome::kExhausted);
  CHECK(none.pair_table.size() == 3);
  problem.free_slots = 1;
  problem.objective = "sum-of-squares";
  CHECK_THROWS_AS(search_extension(problem, {.seed = 1}), Error);
  problem.objective = "log-residual";
  problem.domain = CoefficientDomain::kGoldenLattice;
  CHECK_THROWS_AS(search_extension(problem, {.seed = 1}), Error);
}

TEST_CASE("lattice triples at K = 1") {
  const auto triples = enumerate_triples_n1(QuadNum::from_int(1, Ambient::golden()), 1);
  REQUIRE_FALSE(triples.empty());
  // Every N = 1 triple is equivalent to every other, so one class remains.
  CHECK(triples.size() == 1);
  for (const auto& t : triples) CHECK(verify_mu(t).verdict);
}

}  // TEST_SUITE
