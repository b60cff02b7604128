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

// Built-in reference configurations and the one-shot reproduction manifest.

#ifndef MUBC_REPRODUCE_HPP_
#define MUBC_REPRODUCE_HPP_

#include <string>
#include <vector>

#include "mubc/json_io.hpp"
#include "mubc/symplectic_core.hpp"

namespace mubc {

namespace fixtures {

// Q(sqrt 3) as R^2 = 3.
const Ambient& sqrt3_ambient();

// (0, -1), (1, 0), (1, 1) at K = 1.
MUConfiguration<QuadNum> asymmetric_triple();
// (0, -1), (sqrt3/2, 1/2), (-sqrt3/2, 1/2) at K = sqrt3/2, exact in Q(sqrt 3).
MUConfiguration<QuadNum> symmetric_triple();
// The same directions with the second component 1 instead of 1/2; not MU.
MUConfiguration<QuadNum> symmetric_triple_unhalved();
// Five two-mode vectors over the golden field at K = 1.
MUConfiguration<QuadNum> golden_five();

}  // namespace fixtures

enum class Provenance { kPublished, kDerived, kTrivial };

std::string_view provenance_name(Provenance p);

struct ManifestCheck {
  std::string id;
  std::string anchor;
  std::string computed;
  std::string expected;
  Provenance provenance = Provenance::kPublished;
  bool exact = false;           // compared for equality, not by tolerance
  double relative_error = 0.0;  // numeric checks
  bool pass = false;
  std::string note;
};

struct ReproductionManifest {
  double hbar = 1.0;
  double tolerance = 1e-9;
  std::vector<ManifestCheck> checks;

  bool all_pass() const;
};

// Deterministic; failures are entries, never exceptions.
ReproductionManifest run_reproduction(double hbar = 1.0, double tolerance = 1e-9,
                                      ExecPolicy exec = ExecPolicy::kParallel);

Json manifest_to_json(const ReproductionManifest& manifest);
std::string manifest_table(const ReproductionManifest& manifest);

}  // namespace mubc

#endif  // MUBC_REPRODUCE_HPP_
