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
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/model.hpp"

namespace setcard {

struct OracleBound {
  /// Largest universe tried.
  std::uint32_t max_universe = 4;
  /// Free cardinality variables range over [0, max_universe + card_slack].
  std::uint32_t card_slack = 2;
};

struct OracleResult {
  bool found = false;
  Model model;
  /// Universe size of the model when found, else the bound.
  std::uint32_t universe = 0;
};

/// Brute-force search for a model of the (unflattened) constraints, trying
/// universes of increasing size. The first model in enumeration order is
/// returned.
OracleResult enumerate(const std::vector<Constraint>& constraints, const OracleBound& bound);

}  // namespace setcard
