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

#include "mubc/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "mubc/metaplectic.hpp"
#include "mubc/mu_search.hpp"
#include "mubc/oracle_numeric.hpp"

namespace mubc {

namespace fixtures {

namespace {

MUConfiguration<QuadNum> make_config(const Ambient& amb, const char* k,
                                     std::vector<std::vector<std::pair<const char*, const char*>>> vs) {
  MUConfiguration<QuadNum> c;
  c.targetK = parse_quad(k, amb);
  for (const auto& v : vs) {
    std::vector<DirectionVector<QuadNum>> factors;
    for (const auto& [q, p] : v) factors.emplace_back(parse_quad(q, amb), parse_quad(p, amb));
    c.vectors.emplace_back(std::move(factors));
  }
  return c;
}

}  // namespace

const Ambient& sqrt3_ambient() { return Ambient::intern(Rat(0), Rat(3)); }

MUConfiguration<QuadNum> asymmetric_triple() {
  return make_config(Ambient::golden(), "1", {{{"0", "-1"}}, {{"1", "0"}}, {{"1", "1"}}});
}

MUConfiguration<QuadNum> symmetric_triple() {
  return make_config(sqrt3_ambient(), "1/2 R",
                     {{{"0", "-1"}}, {{"1/2 R", "1/2"}}, {{"-1/2 R", "1/2"}}});
}

MUConfiguration<QuadNum> symmetric_triple_unhalved() {
  return make_config(sqrt3_ambient(), "1/2 R",
                     {{{"0", "-1"}}, {{"1/2 R", "1"}}, {{"-1/2 R", "1"}}});
}

MUConfiguration<QuadNum> golden_five() {
  return make_config(Ambient::golden(), "1",
                     {{{"1", "0"}, {"1", "0"}},
                      {{"0", "1"}, {"0", "1"}},
                      {{"1", "1"}, {"1", "1"}},
                      {{"1", "1 - R"}, {"1", "R"}},
                      {{"1", "2 - R"}, {"1", "1 + R"}}});
}

}  // namespace fixtures

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kPublished: return "published";
    case Provenance::kDerived: return "derived";
    case Provenance::kTrivial: return "trivial";
  }
  return "unknown";
}

bool ReproductionManifest::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

class Builder {
 public:
  Builder(ReproductionManifest& m) : m_(m) {}

  void numeric(std::string id, std::string anchor, Provenance prov,
               const std::function<double()>& compute, double expected,
               std::string note = {}) {
    ManifestCheck c{std::move(id), std::move(anchor), "", num(expected), prov, false, 0.0,
                    false, std::move(note)};
    try {
      const double v = compute();
      c.computed = num(v);
      c.relative_error = std::fabs(v - expected) / std::fabs(expected);
      c.pass = std::isfinite(v) && c.relative_error <= m_.tolerance;
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    m_.checks.push_back(std::move(c));
  }

  // Quadrature checks also need the oracle to report convergence.
  void oracle(std::string id, std::string anchor, Provenance prov,
              const std::function<QuadratureResult()>& compute, double expected) {
    ManifestCheck c{std::move(id), std::move(anchor), "", num(expected), prov, false, 0.0,
                    false, {}};
    try {
      const QuadratureResult r = compute();
      c.computed = num(r.value);
      c.relative_error = std::fabs(r.value - expected) / std::fabs(expected);
      c.pass = r.converged && c.relative_error <= m_.tolerance;
      c.note = "oracle error estimate " + num(r.errorEstimate / std::fabs(expected)) +
               " relative";
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    m_.checks.push_back(std::move(c));
  }

  void exact(std::string id, std::string anchor, Provenance prov,
             const std::function<std::string()>& compute, std::string expected,
             std::string note = {}) {
    ManifestCheck c{std::move(id), std::move(anchor), "", std::move(expected), prov, true, 0.0,
                    false, std::move(note)};
    try {
      c.computed = compute();
      c.pass = c.computed == c.expected;
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
    }
    m_.checks.push_back(std::move(c));
  }

 private:
  ReproductionManifest& m_;
};

// "verdict=<bool>; magnitudes=<m01,m02,...>" from an exact verification.
std::string exact_summary(const MUConfiguration<QuadNum>& c) {
  const auto report = verify_mu(c, VerifyOptions{0.0, false, ExecPolicy::kSerial});
  std::ostringstream out;
  out << "verdict=" << (report.verdict ? "true" : "false") << "; magnitudes=";
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    out << (i ? "," : "") << quad_to_string(report.pairs[i].magnitude);
  }
  return out.str();
}

std::string expected_summary(const QuadNum& k, std::size_t pairs) {
  std::string s = "verdict=true; magnitudes=";
  for (std::size_t i = 0; i < pairs; ++i) s += (i ? "," : "") + quad_to_string(k);
  return s;
}

template <Scalar T>
std::string certificate_summary(const CertifyResult<T>& r) {
  if (std::holds_alternative<Counterexample<T>>(r)) return "counterexample";
  const auto& cert = std::get<InfeasibilityCertificate<T>>(r);
  std::size_t inconsistent = 0;
  for (const auto& p : cert.patterns) inconsistent += p.inconsistent ? 1 : 0;
  return std::string(cert.valid() ? "valid" : "invalid") + " certificate, " +
         std::to_string(inconsistent) + "/8 sign patterns inconsistent";
}

}  // namespace

ReproductionManifest run_reproduction(double hbar, double tolerance, ExecPolicy exec) {
  ReproductionManifest m;
  m.hbar = hbar;
  m.tolerance = tolerance;
  Builder b(m);
  const double h = 2.0 * kPi * hbar;

  QuadratureOptions qopts;
  qopts.exec = exec;

  // Position and momentum.
  b.numeric("position-momentum", "position and momentum bases overlap", Provenance::kPublished,
            [&] { return overlap_magnitude_sq(DirectionVector<double>(0, 1),
                                              DirectionVector<double>(1, 0), hbar); },
            1.0 / h);

  // Rotated bases, three independent routes.
  const double theta0 = 0.3;
  for (const auto& [name, theta] : std::vector<std::pair<std::string, double>>{
           {"pi/6", kPi / 6}, {"pi/4", kPi / 4}, {"pi/3", kPi / 3}, {"2pi/3", 2 * kPi / 3}}) {
    const double expected = 1.0 / (h * std::fabs(std::sin(theta)));
    const std::string anchor = "rotated position basis overlap 1/(2 pi hbar |sin theta|)";
    b.numeric("rotation-core-" + name, anchor, Provenance::kPublished,
              [&] { return overlap_magnitude_sq(rotated_direction(0.0), rotated_direction(theta),
                                                hbar); },
              expected);
    b.numeric("rotation-metaplectic-" + name, anchor, Provenance::kPublished,
              [&] { return genmu_overlap_sq(rotation(theta), hbar); }, expected);
    b.oracle("rotation-oracle-" + name, anchor, Provenance::kPublished,
             [&] {
               return overlap_quadrature(ChirpState{rotated_direction(theta0), 0.0, hbar},
                                         ChirpState{rotated_direction(theta0 + theta), 0.0, hbar},
                                         qopts);
             },
             expected);
  }

  // Three bases with three-fold symmetry.
  const auto sym = fixtures::symmetric_triple();
  b.exact("symmetric-triple", "three-fold symmetric MU triple, K = sqrt3/2",
          Provenance::kPublished, [&] { return exact_summary(sym); },
          expected_summary(sym.targetK, 3),
          "exact in Q(R), R^2 = 3; uses the unit vectors (+-sqrt3/2, 1/2)");
  b.exact("symmetric-triple-unhalved",
          "the form (+-sqrt3/2, 1) is not unit length and not MU", Provenance::kDerived,
          [&] { return exact_summary(fixtures::symmetric_triple_unhalved()); },
          "verdict=false; magnitudes=" + quad_to_string(sym.targetK) + "," +
              quad_to_string(sym.targetK) + "," +
              quad_to_string(QuadNum::root(fixtures::sqrt3_ambient())),
          "products sqrt3/2, sqrt3/2, sqrt3; the fixture uses second component 1/2");
  b.numeric("symmetric-triple-overlap", "three-fold symmetric triple overlap 1/(pi hbar sqrt3)",
            Provenance::kPublished,
            [&] { return overlap_magnitude_sq(to_numeric(sym).vectors[1],
                                              to_numeric(sym).vectors[2], hbar); },
            1.0 / (kPi * hbar * std::sqrt(3.0)));

  // Asymmetric triple.
  const auto asym = fixtures::asymmetric_triple();
  b.exact("asymmetric-triple", "asymmetric MU triple (0,-1), (1,0), (1,1) at K = 1",
          Provenance::kPublished, [&] { return exact_summary(asym); }, expected_summary(asym.targetK, 3));

  // Golden five-set.
  const auto golden = fixtures::golden_five();
  b.exact("golden-five", "five two-mode MU product bases over the golden field, K = 1",
          Provenance::kPublished, [&] { return exact_summary(golden); },
          expected_summary(golden.targetK, 10));
  b.numeric("golden-five-overlap", "two-mode overlap (2 pi hbar)^-2 at K = 1",
            Provenance::kDerived,
            [&] { return overlap_magnitude_sq(to_numeric(golden).vectors[0],
                                              to_numeric(golden).vectors[4], hbar); },
            1.0 / (h * h));

  // No fourth vector.
  auto dirs = [](const MUConfiguration<QuadNum>& c) {
    return std::array<DirectionVector<QuadNum>, 3>{c.vectors[0].factors()[0],
                                                    c.vectors[1].factors()[0],
                                                    c.vectors[2].factors()[0]};
  };
  b.exact("no-fourth-asymmetric", "no fourth single-mode basis extends the triple",
          Provenance::kPublished,
          [&] {
            const auto d = dirs(asym);
            return certificate_summary(certify_no_fourth(d[0], d[1], d[2], asym.targetK));
          },
          "valid certificate, 8/8 sign patterns inconsistent");
  b.exact("no-fourth-symmetric", "no fourth single-mode basis extends the triple",
          Provenance::kPublished,
          [&] {
            const auto d = dirs(sym);
            return certificate_summary(certify_no_fourth(d[0], d[1], d[2], sym.targetK));
          },
          "valid certificate, 8/8 sign patterns inconsistent");

  // Equivalence of the two triples.
  b.exact("triple-equivalence", "unsigned symplectic map from asymmetric to symmetric triple",
          Provenance::kPublished,
          [&] {
            const auto eq = find_equivalence(to_numeric(asym), to_numeric(sym), 1e-10);
            if (!eq) return std::string("not found");
            return std::string("found, residual < 1e-10");
          },
          "found, residual < 1e-10");

  // Metaplectic families.
  b.numeric("special-m", "overlap of the family built from (Q, P, mu) = (2, 3, 1), 1/(2 pi hbar |Q|)",
            Provenance::kPublished,
            [&] { return genmu_overlap_sq(special_m(2.0, 3.0, 1.0), hbar); }, 1.0 / (h * 2.0));
  b.numeric("composition", "composed rotations 0.4 and 1.5 give 1/(2 pi hbar |sin 1.1|)",
            Provenance::kPublished,
            [&] { return compose_overlap_sq(rotation(0.4), rotation(1.5), hbar); },
            1.0 / (h * std::fabs(std::sin(1.1))));

  // Searches.
  b.exact("lattice-search", "golden-lattice search (H = 2) recovers the fifth two-mode vector",
          Provenance::kPublished,
          [&] {
            SearchProblem p;
            MUConfiguration<QuadNum> seeds = golden;
            seeds.vectors.pop_back();
            p.seeds = seeds;
            p.domain = CoefficientDomain::kGoldenLattice;
            p.height = 2;
            SearchOptions o;
            o.exec = exec;
            const SearchReport r = search_extension(p, o);
            const auto& fifth = golden.vectors.back().expanded();
            bool recovered = false;
            for (const auto& hit : r.lattice_hits) {
              std::vector<QuadNum> neg;
              for (const auto& x : hit.expanded()) neg.push_back(-x);
              recovered = recovered || hit.expanded() == fifth || neg == fifth;
            }
            return std::string(outcome_name(r.outcome)) + ", residual " + num(r.residual) +
                   (recovered ? ", fifth vector among hits" : ", fifth vector missing");
          },
          "extended, residual 0, fifth vector among hits");
  b.exact("real-search-triple", "real search for a fourth single-mode vector finds none",
          Provenance::kDerived,
          [&] {
            SearchProblem p;
            p.seeds = to_numeric(asym);
            SearchOptions o;
            o.seed = 1;
            o.budget = 40000;
            o.restarts = 8;
            o.exec = exec;
            return std::string(outcome_name(search_extension(p, o).outcome));
          },
          "no-improvement");

  // Oracle scans.
  const auto scan_check = [&](std::string id, std::string anchor, Provenance prov,
                              std::vector<double> thetas, std::size_t entry, double expected) {
    b.numeric(std::move(id), std::move(anchor), prov,
              [&, thetas, entry] {
                const auto table = pairwise_unbiased_scan(thetas, hbar, qopts);
                const ScanEntry& e = table.at(entry);
                if (!e.agree) fail(ErrorCode::kPreconditionFailed, "oracle disagrees");
                return e.oracle;
              },
              expected);
  };
  scan_check("scan-position-momentum", "rotated bases 0 and pi/2", Provenance::kPublished,
             {0.0, kPi / 2}, 0, 1.0 / h);
  scan_check("scan-three-fold", "rotated bases 2pi/3 and 4pi/3", Provenance::kPublished,
             {0.0, 2 * kPi / 3, 4 * kPi / 3}, 2, 1.0 / (h * std::sqrt(3.0) / 2.0));
  scan_check("scan-pi-over-6", "rotated bases pi/3 and pi/2 differ by pi/6, 1/(pi hbar)",
             Provenance::kDerived, {kPi / 3, kPi / 2}, 0, 1.0 / (kPi * hbar));
  b.oracle("oracle-chirp-pair", "chirps (1, 1) and (1, -1): 1/(4 pi hbar)",
           Provenance::kDerived,
           [&] {
             return overlap_quadrature(ChirpState{DirectionVector<double>(1, 1), 0.0, hbar},
                                       ChirpState{DirectionVector<double>(1, -1), 0.0, hbar},
                                       qopts);
           },
           1.0 / (2.0 * h));
  return m;
}

Json manifest_to_json(const ReproductionManifest& manifest) {
  Json checks = Json::array();
  for (const auto& c : manifest.checks) {
    Json j{{"id", c.id},
           {"anchor", c.anchor},
           {"computed", c.computed},
           {"expected", c.expected},
           {"provenance", std::string(provenance_name(c.provenance))},
           {"exact", c.exact},
           {"pass", c.pass}};
    if (!c.exact) j["relative_error"] = c.relative_error;
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return Json{{"hbar", manifest.hbar},
              {"tolerance", manifest.tolerance},
              {"pass", manifest.all_pass()},
              {"checks", std::move(checks)}};
}

std::string manifest_table(const ReproductionManifest& manifest) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-4s  %-30s  %-10s  %s\n", "", "check", "source",
                "computed / expected");
  out << line;
  for (const auto& c : manifest.checks) {
    std::snprintf(line, sizeof line, "%-4s  %-30s  %-10s  %s / %s\n", c.pass ? "ok" : "FAIL",
                  c.id.c_str(), std::string(provenance_name(c.provenance)).c_str(),
                  c.computed.c_str(), c.expected.c_str());
    out << line;
  }
  out << (manifest.all_pass() ? "all checks pass" : "some checks FAILED") << " (hbar "
      << manifest.hbar << ", tolerance " << manifest.tolerance << ")\n";
  return out.str();
}

}  // namespace mubc
