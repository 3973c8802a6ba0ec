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
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "setcard/ast.hpp"

namespace setcard {

/// A search budget was exhausted before a verdict was reached.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjunction of CardAtoms over variables ranging over the naturals.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<CardAtom> atoms);

  void add(CardAtom atom);
  /// Registers a variable that may not occur in any atom.
  void add_variable(const Term& var);

  const std::vector<CardAtom>& atoms() const { return atoms_; }
  /// Variables in registration order.
  const std::vector<Term>& variables() const { return vars_; }
  std::optional<std::size_t> index_of(const Term& var) const;

 private:
  std::vector<CardAtom> atoms_;
  std::vector<Term> vars_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
};

struct LiaOptions {
  /// Maximum number of branch-and-bound nodes.
  std::uint64_t node_budget = 200000;
};

struct LiaResult {
  bool sat = false;
  /// Total assignment on sat.
  std::map<Term, std::int64_t> model;
  std::uint64_t nodes = 0;
};

/// Decides the system over the naturals. Throws ResourceLimit when the node
/// budget is exhausted.
LiaResult check(const LinearSystem& system, const LiaOptions& options = {});

/// Evaluates an atom under an assignment; missing variables read as 0.
bool holds(const CardAtom& atom, const std::map<Term, std::int64_t>& model);

/// True iff `atoms` literally contains `1*c - k >= 0` with k >= n.
bool syntactic_geq(const std::vector<CardAtom>& atoms, const Term& card_var, std::int64_t n);

}  // namespace setcard
