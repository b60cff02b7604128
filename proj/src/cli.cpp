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

#include "mubc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mubc/json_io.hpp"
#include "mubc/metaplectic.hpp"
#include "mubc/mu_search.hpp"
#include "mubc/oracle_numeric.hpp"
#include "mubc/reproduce.hpp"

namespace mubc::cli {

namespace {

struct Globals {
  std::optional<double> hbar;
  std::optional<double> tolerance;
  std::string mode;  // "", "exact" or "numeric"
  std::string out;
  std::string csv;
};

class Io {
 public:
  Io(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  // JSON goes to --out when given, otherwise to stdout ahead of the table.
  void emit(const Json& doc, const std::string& table = {}) {
    if (g_.out.empty()) {
      out_ << doc.dump(2) << "\n";
    } else {
      std::ofstream f(g_.out);
      if (!f) fail(ErrorCode::kParseError, g_.out + ": cannot write");
      f << doc.dump(2) << "\n";
    }
    if (!table.empty()) out_ << table;
  }

  void csv(const std::string& text) {
    if (g_.csv.empty()) return;
    std::ofstream f(g_.csv);
    if (!f) fail(ErrorCode::kParseError, g_.csv + ": cannot write");
    f << text;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

AnyConfig load_config(const std::string& path, const Globals& g) {
  AnyConfig config = JsonDocument::from_file(path).read(config_from_json);
  if (g.mode == "numeric") {
    config = std::visit([](const auto& c) { return to_numeric(c); }, config);
  } else if (g.mode == "exact" && std::holds_alternative<MUConfiguration<double>>(config)) {
    fail(ErrorCode::kNotRepresentable, "a numeric configuration has no exact form");
  }
  if (g.hbar) std::visit([&](auto& c) { c.hbar = *g.hbar; }, config);
  return config;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& path, bool infer_k, const Globals& g, Io& io) {
  const AnyConfig config = load_config(path, g);
  return std::visit(
      [&](const auto& c) {
        VerifyOptions opts;
        opts.infer_k = infer_k;
        if (g.tolerance) opts.tolerance = *g.tolerance;
        const auto report = verify_mu(c, opts);
        std::ostringstream csv;
        csv << "i,j,product,magnitude,deviation,parallel\n";
        for (const auto& p : report.pairs) {
          csv << p.i << "," << p.j << "," << scalar_to_string(p.product) << ","
              << scalar_to_string(p.magnitude) << "," << p.deviation << ","
              << (p.parallel ? 1 : 0) << "\n";
        }
        io.csv(csv.str());
        Json doc = report_to_json(report);
        doc["overlap_sq"] = report.has_parallel_pair
                                ? Json(nullptr)
                                : Json(std::pow(overlap_constant(to_real(report.K), c.modes(), c.hbar), 2));
        io.emit(doc);
        return report.verdict ? kExitOk : kExitVerdictFalse;
      },
      config);
}

int cmd_search(const std::string& path, std::uint64_t seed, long budget, int restarts,
               const Globals& g, Io& io) {
  SearchProblem problem = JsonDocument::from_file(path).read(search_problem_from_json);
  if (g.hbar) std::visit([&](auto& c) { c.hbar = *g.hbar; }, problem.seeds);
  SearchOptions opts;
  opts.seed = seed;
  opts.budget = budget;
  opts.restarts = restarts;
  if (g.tolerance) opts.success_tolerance = *g.tolerance;
  const SearchReport report = search_extension(problem, opts);
  std::ostringstream csv;
  csv << "i,j,magnitude,residual\n";
  for (const auto& r : report.pair_table) {
    csv << r.i << "," << r.j << "," << r.magnitude << "," << r.residual << "\n";
  }
  io.csv(csv.str());
  io.emit(report_to_json(report));
  return report.outcome == SearchOutcome::kExtended ? kExitOk : kExitVerdictFalse;
}

int cmd_certify(const std::string& path, const Globals& g, Io& io) {
  const AnyConfig config = load_config(path, g);
  return std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c.targetK)>;
        if (c.vectors.size() != 3 || c.modes() != 1) {
          fail(ErrorCode::kDimensionMismatch, "certify-n1 needs three single-mode vectors");
        }
        const auto result = certify_no_fourth(
            c.vectors[0].factors()[0], c.vectors[1].factors()[0], c.vectors[2].factors()[0],
            c.targetK, g.tolerance.value_or(1e-12));
        io.emit(certify_to_json(result));
        const auto* cert = std::get_if<InfeasibilityCertificate<T>>(&result);
        return cert != nullptr && cert->valid() ? kExitOk : kExitVerdictFalse;
      },
      config);
}

int cmd_enumerate(const std::string& k_text, int height, const std::string& ambient_text,
                  Io& io) {
  const Ambient* ambient = &Ambient::golden();
  if (!ambient_text.empty()) {
    const auto comma = ambient_text.find(',');
    if (comma == std::string::npos) fail(ErrorCode::kParseError, "--ambient expects u,v");
    ambient = &Ambient::intern(parse_rat(ambient_text.substr(0, comma)),
                               parse_rat(ambient_text.substr(comma + 1)));
  }
  const QuadNum k = parse_quad(k_text, *ambient);
  const auto triples = enumerate_triples_n1(k, height);
  Json list = Json::array();
  for (const auto& t : triples) list.push_back(config_to_json(t));
  io.emit(Json{{"k", quad_to_json(k)}, {"H", height}, {"classes", triples.size()},
               {"triples", std::move(list)}});
  return kExitOk;
}

int cmd_equivalence(const std::string& a_path, const std::string& b_path, const Globals& g,
                    Io& io) {
  Globals numeric = g;
  numeric.mode = "numeric";
  const auto a = std::get<MUConfiguration<double>>(load_config(a_path, numeric));
  const auto b = std::get<MUConfiguration<double>>(load_config(b_path, numeric));
  const auto eq = find_equivalence(a, b, g.tolerance.value_or(1e-10));
  io.emit(equivalence_to_json(eq));
  return eq ? kExitOk : kExitVerdictFalse;
}

template <Scalar T>
Json metaplectic_json(const SymplecticMatrix<T>& m, double hbar) {
  const auto spec = make_metaplectic_spec(m, hbar);
  return Json{{"M", matrix_to_json(m.stacked(), Ordering::kStacked)},
              {"cayley", matrix_to_json(spec.cayley, Ordering::kStacked)},
              {"overlap_sq", spec.overlap_sq},
              {"hbar", hbar}};
}

template <Scalar T>
SymplecticMatrix<T> as_symplectic(const MatrixInput& in) {
  return SymplecticMatrix<T>(std::get<Matrix<T>>(in.matrix), in.ordering);
}

int cmd_meta_overlap(const std::string& path, const Globals& g, Io& io) {
  const MatrixInput in = JsonDocument::from_file(path).read(matrix_from_json);
  const double hbar = g.hbar.value_or(1.0);
  if (std::holds_alternative<Matrix<QuadNum>>(in.matrix)) {
    io.emit(metaplectic_json(as_symplectic<QuadNum>(in), hbar));
  } else {
    io.emit(metaplectic_json(as_symplectic<double>(in), hbar));
  }
  return kExitOk;
}

int cmd_meta_compose(const std::string& a_path, const std::string& b_path, const Globals& g,
                     Io& io) {
  const MatrixInput a = JsonDocument::from_file(a_path).read(matrix_from_json);
  const MatrixInput b = JsonDocument::from_file(b_path).read(matrix_from_json);
  const double hbar = g.hbar.value_or(1.0);
  double value = 0.0;
  if (std::holds_alternative<Matrix<QuadNum>>(a.matrix) &&
      std::holds_alternative<Matrix<QuadNum>>(b.matrix)) {
    value = compose_overlap_sq(as_symplectic<QuadNum>(a), as_symplectic<QuadNum>(b), hbar);
  } else {
    auto numeric = [](const MatrixInput& in) {
      if (const auto* e = std::get_if<Matrix<QuadNum>>(&in.matrix)) {
        Matrix<double> d(e->rows(), e->cols(), 0.0);
        for (std::size_t r = 0; r < e->rows(); ++r)
          for (std::size_t c = 0; c < e->cols(); ++c) d(r, c) = to_real((*e)(r, c));
        return SymplecticMatrix<double>(d, in.ordering);
      }
      return as_symplectic<double>(in);
    };
    value = compose_overlap_sq(numeric(a), numeric(b), hbar);
  }
  io.emit(Json{{"overlap_sq", value}, {"hbar", hbar}});
  return kExitOk;
}

int cmd_meta_special(const std::string& q, const std::string& p, const std::string& mu,
                     const Globals& g, Io& io) {
  const double hbar = g.hbar.value_or(1.0);
  if (g.mode == "exact") {
    io.emit(metaplectic_json(special_m_general(parse_quad(q), parse_quad(p), parse_quad(mu)),
                             hbar));
  } else {
    io.emit(metaplectic_json(special_m_general(parse_rat(q).convert_to<double>(),
                                               parse_rat(p).convert_to<double>(),
                                               parse_rat(mu).convert_to<double>()),
                             hbar));
  }
  return kExitOk;
}

int cmd_oracle_pair(const std::string& a_path, const std::string& b_path, int eps_levels,
                    const Globals& g, Io& io) {
  const double hbar = g.hbar.value_or(1.0);
  auto load = [&](const std::string& path) {
    ChirpState s = JsonDocument::from_file(path).read(
        [&](const Json& j) { return chirp_from_json(j, hbar); });
    if (g.hbar) s.hbar = *g.hbar;
    return s;
  };
  const ChirpState a = load(a_path);
  const ChirpState b = load(b_path);
  QuadratureOptions opts;
  if (eps_levels > 0) {
    opts.levels = eps_levels;
    opts.max_levels = std::max(opts.max_levels, eps_levels);
  }
  const QuadratureResult r = overlap_quadrature(a, b, opts);
  const double formula = overlap_magnitude_sq(a.direction, b.direction, a.hbar);
  const double fresnel = fresnel_reference(a, b);
  std::ostringstream csv;
  csv << "epsilon,value\n";
  for (const auto& [e, v] : r.epsilonSequence) csv << e << "," << v << "\n";
  io.csv(csv.str());
  Json doc = quadrature_to_json(r);
  doc["formula"] = formula;
  doc["fresnel"] = fresnel;
  std::ostringstream table;
  table << "quadrature  " << fmt(r.value) << "  (error estimate " << fmt(r.errorEstimate)
        << ", " << (r.converged ? "converged" : "NOT converged") << ")\n"
        << "fresnel     " << fmt(fresnel) << "\n"
        << "symplectic  " << fmt(formula) << "\n";
  io.emit(doc, table.str());
  return r.converged ? kExitOk : kExitNoConvergence;
}

std::vector<double> parse_thetas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::kParseError, "--thetas: cannot read '" + item + "'");
    }
  }
  if (out.size() < 2) fail(ErrorCode::kParseError, "--thetas needs at least two angles");
  return out;
}

int cmd_oracle_scan(const std::string& thetas_text, int eps_levels, const Globals& g, Io& io) {
  const double hbar = g.hbar.value_or(1.0);
  QuadratureOptions opts;
  if (eps_levels > 0) {
    opts.levels = eps_levels;
    opts.max_levels = std::max(opts.max_levels, eps_levels);
  }
  const auto table = pairwise_unbiased_scan(parse_thetas(thetas_text), hbar, opts);
  std::ostringstream csv, text;
  csv << "i,j,theta_i,theta_j,formula,oracle,error_estimate,method,agree\n";
  text << "  i  j  theta_i       theta_j       formula         oracle          method\n";
  bool all_agree = true, all_converged = true;
  for (const auto& e : table) {
    csv << e.i << "," << e.j << "," << e.theta_i << "," << e.theta_j << "," << e.formula << ","
        << e.oracle << "," << e.error_estimate << "," << e.method << "," << (e.agree ? 1 : 0)
        << "\n";
    char line[200];
    std::snprintf(line, sizeof line, "%3zu %2zu  %-12.6g  %-12.6g  %-14.9g  %-14.9g  %s%s\n",
                  e.i, e.j, e.theta_i, e.theta_j, e.formula, e.oracle, e.method.c_str(),
                  e.parallel ? "" : (e.agree ? "" : "  DISAGREE"));
    text << line;
    if (!e.parallel) {
      all_agree = all_agree && e.agree;
      all_converged = all_converged && e.converged;
    }
  }
  io.csv(csv.str());
  io.emit(Json{{"hbar", hbar}, {"pairs", scan_to_json(table)}}, text.str());
  if (!all_converged) return kExitNoConvergence;
  return all_agree ? kExitOk : kExitVerdictFalse;
}

int cmd_reproduce(const Globals& g, Io& io) {
  const ReproductionManifest m =
      run_reproduction(g.hbar.value_or(1.0), g.tolerance.value_or(1e-9));
  std::ostringstream csv;
  csv << "id,provenance,computed,expected,pass\n";
  for (const auto& c : m.checks) {
    csv << c.id << "," << provenance_name(c.provenance) << ",\"" << c.computed << "\",\""
        << c.expected << "\"," << (c.pass ? 1 : 0) << "\n";
  }
  io.csv(csv.str());
  io.emit(manifest_to_json(m), manifest_table(m));
  return m.all_pass() ? kExitOk : kExitVerdictFalse;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mubc: mutually unbiased bases for continuous variables"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--hbar", g.hbar, "reduced Planck constant (overrides inputs)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance", g.tolerance, "comparison tolerance");
  app.add_option("--mode", g.mode, "exact or numeric")
      ->check(CLI::IsMember({"exact", "numeric"}));
  app.add_option("--out", g.out, "write the JSON result to this file");
  app.add_option("--csv", g.csv, "also write a CSV table to this file");

  std::string path_a, path_b;
  bool infer_k = false;
  auto* verify = app.add_subcommand("verify", "check that a configuration is MU");
  verify->add_option("config", path_a)->required();
  verify->add_flag("--infer-k", infer_k, "take K from the first pair");

  std::uint64_t seed = 0;
  long budget = 0;
  int restarts = 16;
  auto* search = app.add_subcommand("search", "search for vectors extending a configuration");
  search->add_option("problem", path_a)->required();
  search->add_option("--seed", seed, "random seed")->required();
  search->add_option("--budget", budget, "evaluation budget (0: default)");
  search->add_option("--restarts", restarts, "multi-start restarts")->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify-n1", "prove that a triple has no fourth vector");
  certify->add_option("config", path_a)->required();

  std::string k_text = "1", ambient_text;
  int height = 2;
  auto* enumerate = app.add_subcommand("enumerate-n1", "lattice MU triples up to equivalence");
  enumerate->add_option("--k", k_text, "unsigned product, \"p + q R\"");
  enumerate->add_option("--height", height, "lattice height H")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--ambient", ambient_text, "u,v for R^2 = u R + v (default golden)");

  auto* equivalence = app.add_subcommand("equivalence", "map one triple onto another");
  equivalence->add_option("a", path_a)->required();
  equivalence->add_option("b", path_b)->required();

  auto* meta = app.add_subcommand("metaplectic", "overlaps of metaplectic families");
  meta->require_subcommand(1);
  auto* meta_overlap = meta->add_subcommand("overlap", "overlap of U_M |q> with |q'>");
  meta_overlap->add_option("matrix", path_a)->required();
  auto* meta_compose = meta->add_subcommand("compose", "overlap between two families");
  meta_compose->add_option("m", path_a)->required();
  meta_compose->add_option("m_prime", path_b)->required();
  std::string sq = "1", sp = "0", smu = "0";
  auto* meta_special = meta->add_subcommand("special-m", "matrix taking (Q, P) to (0, 1)");
  meta_special->add_option("--Q", sq)->required();
  meta_special->add_option("--P", sp)->required();
  meta_special->add_option("--mu", smu);

  int eps_levels = 0;
  std::string thetas;
  auto* oracle = app.add_subcommand("oracle", "quadrature check of the overlap law");
  oracle->require_subcommand(1);
  auto* oracle_pair = oracle->add_subcommand("pair", "overlap of two chirp states");
  oracle_pair->add_option("a", path_a)->required();
  oracle_pair->add_option("b", path_b)->required();
  oracle_pair->add_option("--eps-levels", eps_levels, "damping levels")
      ->check(CLI::Range(4, 30));
  auto* oracle_scan = oracle->add_subcommand("scan", "pairwise overlaps of rotated bases");
  oracle_scan->add_option("--thetas", thetas, "comma-separated angles")->required();
  oracle_scan->add_option("--eps-levels", eps_levels, "damping levels")
      ->check(CLI::Range(4, 30));

  auto* reproduce = app.add_subcommand("reproduce", "run every reference check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Io io(g, out);
  try {
    if (*verify) return cmd_verify(path_a, infer_k, g, io);
    if (*search) return cmd_search(path_a, seed, budget, restarts, g, io);
    if (*certify) return cmd_certify(path_a, g, io);
    if (*enumerate) return cmd_enumerate(k_text, height, ambient_text, io);
    if (*equivalence) return cmd_equivalence(path_a, path_b, g, io);
    if (*meta_overlap) return cmd_meta_overlap(path_a, g, io);
    if (*meta_compose) return cmd_meta_compose(path_a, path_b, g, io);
    if (*meta_special) return cmd_meta_special(sq, sp, smu, g, io);
    if (*oracle_pair) return cmd_oracle_pair(path_a, path_b, eps_levels, g, io);
    if (*oracle_scan) return cmd_oracle_scan(thetas, eps_levels, g, io);
    if (*reproduce) return cmd_reproduce(g, io);
  } catch (const Error& e) {
    err << "mubc: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace mubc::cli
