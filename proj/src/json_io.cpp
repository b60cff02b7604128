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

#include "mubc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mubc {

// ---------------------------------------------------------------------------
// JsonDocument

namespace {

std::string escape_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Walks the raw text in step with the JSON grammar to find where the value
// at a given pointer starts. The text is known to parse.
class Locator {
 public:
  explicit Locator(std::string_view text) : t_(text) {}

  int find(std::string_view target) {
    target_ = target;
    value("");
    return found_;
  }

 private:
  void ws() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' ||
                              t_[i_] == '\r')) {
      if (t_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  std::string string_token() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) out += t_[i_++];
    }
    ++i_;
    return out;
  }

  void value(const std::string& path) {
    ws();
    if (found_ == 0 && path == target_) found_ = line_;
    if (i_ >= t_.size()) return;
    const char c = t_[i_];
    if (c == '{') {
      ++i_;
      ws();
      if (t_[i_] == '}') {
        ++i_;
        return;
      }
      while (i_ < t_.size()) {
        ws();
        const std::string key = string_token();
        ws();
        ++i_;  // ':'
        value(path + "/" + escape_token(key));
        ws();
        if (t_[i_++] == '}') return;
      }
    } else if (c == '[') {
      ++i_;
      ws();
      if (t_[i_] == ']') {
        ++i_;
        return;
      }
      for (std::size_t k = 0; i_ < t_.size(); ++k) {
        value(path + "/" + std::to_string(k));
        ws();
        if (t_[i_++] == ']') return;
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != ']' && t_[i_] != '}' &&
             t_[i_] != ' ' && t_[i_] != '\n' && t_[i_] != '\r' && t_[i_] != '\t') {
        ++i_;
      }
    }
  }

  std::string_view t_;
  std::string_view target_;
  std::size_t i_ = 0;
  int line_ = 1;
  int found_ = 0;
};

}  // namespace

JsonDocument::JsonDocument(std::string text, std::string source)
    : text_(std::move(text)), source_(std::move(source)) {
  try {
    value_ = Json::parse(text_);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line and column.
    const std::size_t pos = std::min<std::size_t>(e.byte, text_.size());
    int line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::kParseError, source_ + ":" + std::to_string(line) + ":" +
                                     std::to_string(col) + ": malformed JSON");
  }
}

JsonDocument JsonDocument::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return JsonDocument(ss.str(), path);
}

int JsonDocument::line_of(std::string_view pointer) const {
  return Locator(text_).find(pointer);
}

std::string JsonDocument::strip_code(const char* what) {
  std::string s(what);
  const std::string prefix = std::string(error_code_name(ErrorCode::kParseError)) + ": ";
  if (s.rfind(prefix, 0) == 0) s.erase(0, prefix.size());
  return s;
}

// ---------------------------------------------------------------------------
// Scalars

namespace {

const Json& member(const Json& obj, const char* key, const std::string& pointer) {
  if (!obj.is_object()) throw FieldError(pointer.empty() ? "/" : pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FieldError(pointer + "/" + key, "missing field");
  return *it;
}

const Json* optional_member(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string string_field(const Json& j, const std::string& pointer) {
  if (!j.is_string()) throw FieldError(pointer, "expected a string");
  return j.get<std::string>();
}

long integer_field(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) throw FieldError(pointer, "expected an integer");
  return j.get<long>();
}

const Json& array_field(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw FieldError(pointer, "expected an array");
  return j;
}

Rat rat_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const Error& e) {
      throw FieldError(pointer, e.what());
    }
  }
  throw FieldError(pointer, "expected an integer or a rational string");
}

}  // namespace

double real_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>()).convert_to<double>();
    } catch (const Error& e) {
      throw FieldError(pointer, e.what());
    }
  }
  throw FieldError(pointer, "expected a number");
}

QuadNum quad_from_json(const Json& j, const Ambient& ambient, const std::string& pointer) {
  if (j.is_number_integer()) return QuadNum::from_int(j.get<long>(), ambient);
  if (j.is_string()) {
    try {
      return parse_quad(j.get<std::string>(), ambient);
    } catch (const Error& e) {
      throw FieldError(pointer, e.what());
    }
  }
  if (j.is_object()) {
    return QuadNum(rat_from_json(member(j, "p", pointer), pointer + "/p"),
                   rat_from_json(member(j, "q", pointer), pointer + "/q"), ambient);
  }
  throw FieldError(pointer, "exact mode needs an integer or a \"p + q R\" string");
}

Json quad_to_json(const QuadNum& x) { return quad_to_string(x); }

const Ambient& ambient_from_json(const Json& doc) {
  const Json* a = doc.is_object() ? optional_member(doc, "ambient") : nullptr;
  if (a == nullptr) return Ambient::golden();
  const Rat u = rat_from_json(member(*a, "u", "/ambient"), "/ambient/u");
  const Rat v = rat_from_json(member(*a, "v", "/ambient"), "/ambient/v");
  try {
    return Ambient::intern(u, v);
  } catch (const Error& e) {
    throw FieldError("/ambient", e.what());
  }
}

Json ambient_to_json(const Ambient& ambient) {
  return Json{{"u", rat_to_string(ambient.u())}, {"v", rat_to_string(ambient.v())}};
}

// ---------------------------------------------------------------------------
// Configurations

namespace {

bool exact_mode(const Json& doc) {
  const Json* m = optional_member(doc, "mode");
  if (m == nullptr) return false;
  const std::string mode = string_field(*m, "/mode");
  if (mode == "exact") return true;
  if (mode == "numeric") return false;
  throw FieldError("/mode", "expected \"exact\" or \"numeric\"");
}

template <Scalar T>
T scalar_from_json(const Json& j, const Ambient& ambient, const std::string& pointer) {
  if constexpr (kIsExact<T>) {
    return quad_from_json(j, ambient, pointer);
  } else {
    (void)ambient;
    return real_from_json(j, pointer);
  }
}

template <Scalar T>
Json scalar_json(const T& x) {
  if constexpr (kIsExact<T>) {
    return quad_to_json(x);
  } else {
    return x;
  }
}

template <Scalar T>
DirectionVector<T> direction_from_json(const Json& j, const Ambient& ambient,
                                       const std::string& pointer) {
  if (!j.is_array() || j.size() != 2) throw FieldError(pointer, "expected [Q, P]");
  try {
    return DirectionVector<T>(scalar_from_json<T>(j[0], ambient, pointer + "/0"),
                              scalar_from_json<T>(j[1], ambient, pointer + "/1"));
  } catch (const FieldError&) {
    throw;
  } catch (const Error& e) {
    throw FieldError(pointer, e.what());
  }
}

template <Scalar T>
Json direction_json(const DirectionVector<T>& d) {
  return Json::array({scalar_json(d.Q()), scalar_json(d.P())});
}

template <Scalar T>
MUConfiguration<T> read_config(const Json& doc, const char* vectors_key) {
  const Ambient& ambient = ambient_from_json(doc);
  MUConfiguration<T> config;
  config.targetK = from_int(scalar_from_json<T>(Json(0), ambient, ""), 1);
  if (const Json* h = optional_member(doc, "hbar")) {
    config.hbar = real_from_json(*h, "/hbar");
    if (!(config.hbar > 0)) throw FieldError("/hbar", "hbar must be positive");
  }
  const std::string vp = std::string("/") + vectors_key;
  const Json& vectors = array_field(member(doc, vectors_key, ""), vp);
  std::optional<std::size_t> modes;
  if (const Json* n = optional_member(doc, "N")) {
    const long value = integer_field(*n, "/N");
    if (value < 1 || value > static_cast<long>(kMaxModes)) {
      throw FieldError("/N", "N must be between 1 and " + std::to_string(kMaxModes));
    }
    modes = static_cast<std::size_t>(value);
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::string pi = vp + "/" + std::to_string(i);
    const Json& factors = array_field(vectors[i], pi);
    if (!modes) modes = factors.size();
    if (factors.size() != *modes) {
      throw FieldError(pi, "expected " + std::to_string(*modes) + " factors");
    }
    if (factors.empty()) throw FieldError(pi, "a vector needs at least one factor");
    std::vector<DirectionVector<T>> dirs;
    for (std::size_t n = 0; n < factors.size(); ++n) {
      dirs.push_back(direction_from_json<T>(factors[n], ambient, pi + "/" + std::to_string(n)));
    }
    config.vectors.emplace_back(std::move(dirs));
  }
  if (const Json* k = optional_member(doc, "K")) {
    config.targetK = scalar_from_json<T>(*k, ambient, "/K");
    if (sign_of(config.targetK) <= 0) throw FieldError("/K", "K must be positive");
  } else if (config.vectors.size() >= 2) {
    config.targetK = abs_of(symp_product(config.vectors[0], config.vectors[1]));
  }
  return config;
}

template <Scalar T>
Json write_config(const MUConfiguration<T>& config, const char* vectors_key) {
  Json doc;
  doc["N"] = config.modes();
  doc["mode"] = kIsExact<T> ? "exact" : "numeric";
  if constexpr (kIsExact<T>) {
    if (&config.targetK.ambient() != &Ambient::golden()) {
      doc["ambient"] = ambient_to_json(config.targetK.ambient());
    }
  }
  doc["hbar"] = config.hbar;
  doc["K"] = scalar_json(config.targetK);
  Json vectors = Json::array();
  for (const auto& v : config.vectors) {
    Json factors = Json::array();
    for (const auto& f : v.factors()) factors.push_back(direction_json(f));
    vectors.push_back(std::move(factors));
  }
  doc[vectors_key] = std::move(vectors);
  return doc;
}

}  // namespace

AnyConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw FieldError("/", "expected an object");
  if (exact_mode(doc)) return read_config<QuadNum>(doc, "vectors");
  return read_config<double>(doc, "vectors");
}

Json config_to_json(const MUConfiguration<double>& config) {
  return write_config(config, "vectors");
}
Json config_to_json(const MUConfiguration<QuadNum>& config) {
  return write_config(config, "vectors");
}

// ---------------------------------------------------------------------------
// Chirp states

ChirpState chirp_from_json(const Json& doc, double default_hbar) {
  if (!doc.is_object()) throw FieldError("/", "expected an object");
  const double q = real_from_json(member(doc, "Q", ""), "/Q");
  const double p = real_from_json(member(doc, "P", ""), "/P");
  double alpha = 0.0;
  if (const Json* a = optional_member(doc, "alpha")) alpha = real_from_json(*a, "/alpha");
  double hbar = default_hbar;
  if (const Json* h = optional_member(doc, "hbar")) hbar = real_from_json(*h, "/hbar");
  if (!(hbar > 0)) throw FieldError("/hbar", "hbar must be positive");
  if (q == 0.0 && p == 0.0) throw FieldError("/", "zero direction");
  return ChirpState{DirectionVector<double>(q, p), alpha, hbar};
}

Json chirp_to_json(const ChirpState& state) {
  return Json{{"Q", state.direction.Q()},
              {"P", state.direction.P()},
              {"alpha", state.alpha},
              {"hbar", state.hbar}};
}

// ---------------------------------------------------------------------------
// Matrices

namespace {

template <Scalar T>
Matrix<T> read_matrix(const Json& rows, const Ambient& ambient) {
  const Json& r = array_field(rows, "/rows");
  const std::size_t n = r.size();
  if (n == 0) throw FieldError("/rows", "empty matrix");
  Matrix<T> m(n, n, scalar_from_json<T>(Json(0), ambient, ""));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string pi = "/rows/" + std::to_string(i);
    const Json& row = array_field(r[i], pi);
    if (row.size() != n) throw FieldError(pi, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      m(i, c) = scalar_from_json<T>(row[c], ambient, pi + "/" + std::to_string(c));
    }
  }
  return m;
}

template <Scalar T>
Json write_matrix(const Matrix<T>& m, Ordering ordering) {
  Json doc;
  doc["N"] = m.rows() / 2;
  doc["mode"] = kIsExact<T> ? "exact" : "numeric";
  if constexpr (kIsExact<T>) {
    if (&m.like().ambient() != &Ambient::golden()) {
      doc["ambient"] = ambient_to_json(m.like().ambient());
    }
  }
  doc["ordering"] = ordering == Ordering::kStacked ? "stacked" : "interleaved";
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

}  // namespace

MatrixInput matrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw FieldError("/", "expected an object");
  MatrixInput in;
  if (const Json* o = optional_member(doc, "ordering")) {
    const std::string s = string_field(*o, "/ordering");
    if (s == "stacked") {
      in.ordering = Ordering::kStacked;
    } else if (s == "interleaved") {
      in.ordering = Ordering::kInterleaved;
    } else {
      throw FieldError("/ordering", "expected \"stacked\" or \"interleaved\"");
    }
  }
  const Ambient& ambient = ambient_from_json(doc);
  const Json& rows = member(doc, "rows", "");
  std::size_t size = 0;
  if (exact_mode(doc)) {
    auto m = read_matrix<QuadNum>(rows, ambient);
    size = m.rows();
    in.matrix = std::move(m);
  } else {
    auto m = read_matrix<double>(rows, ambient);
    size = m.rows();
    in.matrix = std::move(m);
  }
  if (size % 2 != 0) throw FieldError("/rows", "symplectic matrices have even size");
  in.modes = size / 2;
  if (const Json* n = optional_member(doc, "N")) {
    if (integer_field(*n, "/N") != static_cast<long>(in.modes)) {
      throw FieldError("/N", "N does not match the matrix size");
    }
  }
  return in;
}

Json matrix_to_json(const Matrix<double>& m, Ordering ordering) {
  return write_matrix(m, ordering);
}
Json matrix_to_json(const Matrix<QuadNum>& m, Ordering ordering) {
  return write_matrix(m, ordering);
}

// ---------------------------------------------------------------------------
// Search problems

SearchProblem search_problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw FieldError("/", "expected an object");
  SearchProblem problem;
  const bool exact = exact_mode(doc);
  if (exact) {
    problem.seeds = read_config<QuadNum>(doc, "seeds");
  } else {
    problem.seeds = read_config<double>(doc, "seeds");
  }
  if (const Json* d = optional_member(doc, "domain")) {
    const std::string s = string_field(*d, "/domain");
    if (s == "reals") {
      problem.domain = CoefficientDomain::kReals;
    } else if (s == "golden-lattice") {
      problem.domain = CoefficientDomain::kGoldenLattice;
    } else {
      throw FieldError("/domain", "expected \"reals\" or \"golden-lattice\"");
    }
  }
  if (problem.domain == CoefficientDomain::kGoldenLattice && !exact) {
    throw FieldError("/mode", "golden-lattice search needs exact seeds");
  }
  if (const Json* h = optional_member(doc, "H")) {
    const long v = integer_field(*h, "/H");
    if (v < 0) throw FieldError("/H", "H must be non-negative");
    problem.height = static_cast<int>(v);
  }
  if (const Json* f = optional_member(doc, "free_slots")) {
    const long v = integer_field(*f, "/free_slots");
    if (v < 0) throw FieldError("/free_slots", "free_slots must be non-negative");
    problem.free_slots = static_cast<std::size_t>(v);
  }
  if (const Json* o = optional_member(doc, "objective")) {
    problem.objective = string_field(*o, "/objective");
    if (problem.objective != "log-residual") {
      throw FieldError("/objective", "only \"log-residual\" is supported");
    }
  }
  return problem;
}

Json search_problem_to_json(const SearchProblem& problem) {
  Json doc = std::visit([](const auto& c) { return write_config(c, "seeds"); }, problem.seeds);
  doc["domain"] = problem.domain == CoefficientDomain::kReals ? "reals" : "golden-lattice";
  doc["H"] = problem.height;
  doc["free_slots"] = problem.free_slots;
  doc["objective"] = problem.objective;
  return doc;
}

// ---------------------------------------------------------------------------
// Result records

template <Scalar T>
Json report_to_json(const VerificationReport<T>& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back(Json{{"i", p.i},
                         {"j", p.j},
                         {"product", scalar_json(p.product)},
                         {"magnitude", scalar_json(p.magnitude)},
                         {"deviation", p.deviation},
                         {"parallel", p.parallel}});
  }
  return Json{{"verdict", report.verdict},
              {"K", scalar_json(report.K)},
              {"has_parallel_pair", report.has_parallel_pair},
              {"max_deviation", report.max_deviation},
              {"max_abs_residual", report.max_abs_residual},
              {"pairs", std::move(pairs)}};
}

namespace {

template <Scalar T>
Json product_vector_json(const ProductVector<T>& v) {
  Json factors = Json::array();
  for (const auto& f : v.factors()) factors.push_back(direction_json(f));
  return factors;
}

}  // namespace

Json report_to_json(const SearchReport& report, bool include_timing) {
  Json doc;
  doc["outcome"] = std::string(outcome_name(report.outcome));
  doc["K"] = report.K;
  doc["residual"] = report.residual;
  Json cands = Json::array();
  for (const auto& v : report.candidates) cands.push_back(product_vector_json(v));
  doc["candidates"] = std::move(cands);
  if (!report.exact_candidates.empty() || !report.lattice_hits.empty()) {
    Json exact = Json::array();
    for (const auto& v : report.exact_candidates) exact.push_back(product_vector_json(v));
    doc["exact_candidates"] = std::move(exact);
    Json hits = Json::array();
    for (const auto& v : report.lattice_hits) hits.push_back(product_vector_json(v));
    doc["lattice_hits"] = std::move(hits);
  }
  Json table = Json::array();
  for (const auto& r : report.pair_table) {
    table.push_back(
        Json{{"i", r.i}, {"j", r.j}, {"magnitude", r.magnitude}, {"residual", r.residual}});
  }
  doc["pair_table"] = std::move(table);
  doc["evaluations"] = report.evaluations;
  doc["iterations"] = report.iterations;
  doc["restarts"] = report.restarts_run;
  if (include_timing) doc["wall_seconds"] = report.wall_seconds;
  return doc;
}

Json quadrature_to_json(const QuadratureResult& result) {
  Json seq = Json::array();
  for (const auto& [eps, raw] : result.epsilonSequence) seq.push_back(Json::array({eps, raw}));
  return Json{{"value", result.value},
              {"errorEstimate", result.errorEstimate},
              {"converged", result.converged},
              {"epsilonSequence", std::move(seq)},
              {"extrapolants", result.extrapolants},
              {"errorHistory", result.errorHistory}};
}

Json scan_to_json(const std::vector<ScanEntry>& table) {
  Json out = Json::array();
  for (const auto& e : table) {
    out.push_back(Json{{"i", e.i},
                       {"j", e.j},
                       {"theta_i", e.theta_i},
                       {"theta_j", e.theta_j},
                       {"formula", e.formula},
                       {"oracle", e.oracle},
                       {"error_estimate", e.error_estimate},
                       {"method", e.method},
                       {"parallel", e.parallel},
                       {"converged", e.converged},
                       {"agree", e.agree}});
  }
  return out;
}

template <Scalar T>
Json certify_to_json(const CertifyResult<T>& result) {
  if (const auto* ce = std::get_if<Counterexample<T>>(&result)) {
    return Json{{"result", "counterexample"},
                {"d", direction_json(ce->d)},
                {"signs", ce->signs}};
  }
  const auto& cert = std::get<InfeasibilityCertificate<T>>(result);
  Json patterns = Json::array();
  for (const auto& rec : cert.patterns) {
    Json p{{"signs", rec.signs},
           {"coefficient_rank", rec.coefficient_rank},
           {"augmented_rank", rec.augmented_rank},
           {"inconsistent", rec.inconsistent}};
    if (rec.candidate) p["candidate"] = direction_json(*rec.candidate);
    if (rec.third_residual) p["third_residual"] = scalar_json(*rec.third_residual);
    patterns.push_back(std::move(p));
  }
  return Json{{"result", "certificate"},
              {"valid", cert.valid()},
              {"k", scalar_json(cert.k)},
              {"triple", Json::array({direction_json(cert.a), direction_json(cert.b),
                                      direction_json(cert.c)})},
              {"patterns", std::move(patterns)}};
}

Json equivalence_to_json(const std::optional<Equivalence>& eq) {
  if (!eq) return Json{{"found", false}};
  return Json{{"found", true},
              {"m", Json::array({Json::array({eq->m(0, 0), eq->m(0, 1)}),
                                 Json::array({eq->m(1, 0), eq->m(1, 1)})})},
              {"det_sign", eq->det_sign},
              {"lambda", eq->lambda},
              {"permutation", eq->permutation},
              {"signs", eq->signs},
              {"residual", eq->residual}};
}

template Json report_to_json(const VerificationReport<double>&);
template Json report_to_json(const VerificationReport<QuadNum>&);
template Json certify_to_json(const CertifyResult<double>&);
template Json certify_to_json(const CertifyResult<QuadNum>&);

}  // namespace mubc
