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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "setcard/ast.hpp"

namespace setcard {

/// Finite interpretation. Universe elements are natural-number ids.
struct Model {
  std::map<std::string, std::uint32_t> elements;
  std::map<std::string, std::set<std::uint32_t>> sets;
  /// User cardinality variables and `card(S)` terms.
  std::map<Term, std::int64_t> cards;
  /// Ids introduced only to pad sets up to their cardinality.
  std::set<std::uint32_t> padding;

  /// Number of distinct ids mentioned anywhere in the model.
  std::size_t universe_size() const;
};

struct Validation {
  bool ok = true;
  std::optional<std::size_t> failing_index;
  std::string message;
};

/// Evaluates a set term; nullopt if a variable has no value.
std::optional<std::set<std::uint32_t>> evaluate_set(const Term& term, const Model& model);

/// Evaluates every constraint. `card(s)` inside arithmetic is evaluated as
/// the size of `s`; a stored value for `card(s)` must agree with it.
Validation validate_model(const std::vector<Constraint>& constraints, const Model& model);

}  // namespace setcard
