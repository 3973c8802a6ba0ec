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

#include <stdexcept>
#include <string>
#include <vector>

#include "setcard/state.hpp"

namespace setcard {

class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The add function. Returns true if the graph changed.
bool add_node(SolverState& state, SetId s);

/// Adds l1 ⊓ l2 below every l1 in NL(s)∖NL(t) and l2 in NL(t)∖NL(s).
/// Both differences must be non-empty.
void merge(SolverState& state, SetId s, SetId t);

/// Leaves of `v` not known to be empty, in vertex order.
std::vector<SetId> nonempty_leaves(const SolverState& state, SetId v);

std::vector<RuleInstance> find_introduce(const SolverState& state, std::size_t limit = 0);
std::vector<RuleInstance> find_guess_empty(const SolverState& state, std::size_t limit = 0);
std::vector<RuleInstance> find_merge(const SolverState& state, std::size_t limit = 0);
/// Introduce rules, then Guess Empty Set (if enabled), then merges.
std::vector<RuleInstance> find_r2(const SolverState& state, bool guess_empty_set = true, std::size_t limit = 0);

struct InducedConstraints {
  std::vector<CardAtom> sums;
  std::vector<CardAtom> nonneg;
  std::vector<CardAtom> singletons;
  std::vector<CardAtom> empties;

  std::vector<CardAtom> all() const;
};

/// The arithmetic constraints imposed by the graph. A sum is omitted when a
/// vertex is its own only non-empty leaf.
InducedConstraints induced_constraints(const SolverState& state);

/// Non-empty-leaf identities of composite vertices, and (if
/// `check_equalities`) of asserted equalities between vertices. Returns one
/// message per violation.
std::vector<std::string> check_graph_properties(const SolverState& state, bool check_equalities);

/// Graphviz rendering; non-empty leaves get a doubled border.
std::string dot(const SolverState& state);

}  // namespace setcard
