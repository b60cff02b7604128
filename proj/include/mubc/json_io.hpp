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

// JSON schemas for configurations, matrices, chirp states, search problems
// and the result records. Exact scalars are strings "p + q R" (rationals as
// n or n/d) interpreted in the document's ambient, {"u": .., "v": ..},
// golden by default. Numeric scalars are JSON numbers or rational strings.
//
// Readers report malformed input as kParseError naming the JSON pointer of
// the offending field; JsonDocument adds the source line.

#ifndef MUBC_JSON_IO_HPP_
#define MUBC_JSON_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mubc/metaplectic.hpp"
#include "mubc/mu_search.hpp"
#include "mubc/oracle_numeric.hpp"
#include "mubc/symplectic_core.hpp"

namespace mubc {

using Json = nlohmann::ordered_json;

// Readers throw this; `pointer` is the RFC 6901 path of the field.
class FieldError : public Error {
 public:
  FieldError(std::string pointer, const std::string& what)
      : Error(ErrorCode::kParseError, "field '" + pointer + "': " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Source text plus parsed value. Syntax errors throw kParseError with line
// and column.
class JsonDocument {
 public:
  JsonDocument(std::string text, std::string source);
  static JsonDocument from_file(const std::string& path);

  const Json& value() const { return value_; }
  const std::string& source() const { return source_; }

  // 1-based line where the value at `pointer` starts; 0 if not found.
  int line_of(std::string_view pointer) const;

  // Runs `reader(value())`, rewriting FieldErrors with the source line.
  template <class F>
  auto read(F&& reader) const -> decltype(reader(std::declval<const Json&>())) {
    try {
      return reader(value_);
    } catch (const FieldError& e) {
      fail(ErrorCode::kParseError, source_ + ":" + std::to_string(line_of(e.pointer())) +
                                       ": " + strip_code(e.what()));
    }
  }

 private:
  static std::string strip_code(const char* what);

  std::string text_;
  std::string source_;
  Json value_;
};

using AnyConfig = std::variant<MUConfiguration<double>, MUConfiguration<QuadNum>>;

const Ambient& ambient_from_json(const Json& doc);
Json ambient_to_json(const Ambient& ambient);

QuadNum quad_from_json(const Json& j, const Ambient& ambient, const std::string& pointer);
Json quad_to_json(const QuadNum& x);
double real_from_json(const Json& j, const std::string& pointer);

// {"N", "mode": "exact"|"numeric", "hbar", "K", "vectors": [[[Q, P], ...], ...]}
AnyConfig config_from_json(const Json& doc);
Json config_to_json(const MUConfiguration<double>& config);
Json config_to_json(const MUConfiguration<QuadNum>& config);

// {"Q", "P", "alpha", "hbar"?}
ChirpState chirp_from_json(const Json& doc, double default_hbar);
Json chirp_to_json(const ChirpState& state);

// {"N", "mode", "ordering": "stacked"|"interleaved", "rows"}
struct MatrixInput {
  std::variant<Matrix<double>, Matrix<QuadNum>> matrix;
  Ordering ordering = Ordering::kStacked;
  std::size_t modes = 0;
};
MatrixInput matrix_from_json(const Json& doc);
Json matrix_to_json(const Matrix<double>& m, Ordering ordering);
Json matrix_to_json(const Matrix<QuadNum>& m, Ordering ordering);

// A configuration whose vector list is named "seeds", plus
// {"domain": "reals"|"golden-lattice", "H", "free_slots", "objective"}.
SearchProblem search_problem_from_json(const Json& doc);
Json search_problem_to_json(const SearchProblem& problem);

// Result records.
template <Scalar T>
Json report_to_json(const VerificationReport<T>& report);
Json report_to_json(const SearchReport& report, bool include_timing = true);
Json quadrature_to_json(const QuadratureResult& result);
Json scan_to_json(const std::vector<ScanEntry>& table);
template <Scalar T>
Json certify_to_json(const CertifyResult<T>& result);
Json equivalence_to_json(const std::optional<Equivalence>& eq);

}  // namespace mubc

#endif  // MUBC_JSON_IO_HPP_
