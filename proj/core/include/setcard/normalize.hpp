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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setcard/ast.hpp"

namespace setcard {

/// Flat-form problem: set constraints S0, element constraints M0 and
/// cardinality atoms A0.
struct FlatProblem {
  std::vector<Constraint> set_constraints;
  std::vector<Constraint> elem_constraints;
  std::vector<CardAtom> card_atoms;
  /// Fresh set variable name -> the subterm it names.
  std::map<std::string, Term> def_map;

  /// S0, then M0, then A0 as Arith constraints.
  std::vector<Constraint> all() const;
};

/// Produces an equisatisfiable flat-form problem. Fresh names use `prefix`.
FlatProblem flatten(const std::vector<Constraint>& constraints, std::string prefix = std::string(kFreshPrefix));

struct FlatViolation {
  std::size_t index;
  std::string reason;
};

/// nullopt iff every constraint is in flat form and every set variable
/// occurs in at most one union, intersection or difference term.
std::optional<FlatViolation> check_flat(const std::vector<Constraint>& constraints);

}  // namespace setcard
