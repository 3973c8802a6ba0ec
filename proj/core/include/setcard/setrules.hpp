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
#include <vector>

#include "setcard/state.hpp"

namespace setcard {

class StaleInstance : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Membership of `lit` in S*.
inline bool in_sstar(const SolverState& state, const SetLit& lit) { return state.in_sstar(lit); }

/// The ⊴ operator on the S component. Returns true if S changed.
inline bool closed_add(SolverState& state, const SetLit& lit) { return state.add_lit(lit); }

/// Which instances find_r1 reports.
enum class R1Tier : std::uint8_t { All, Closing, Propagation, Split };

/// Applicable membership rule instances, in the order closing rules,
/// propagations, splits. Within a tier, terms are visited in relevance order
/// and elements in first-literal order. `limit` caps the result (0 = all).
std::vector<RuleInstance> find_r1(const SolverState& state, R1Tier tier = R1Tier::All, std::size_t limit = 0);

/// Replaces the Set Disequality placeholder by a fresh element.
void bind_witness(RuleInstance& instance, TermBank& bank);

struct Successors {
  bool unsat = false;
  std::vector<SolverState> states;
};

/// Applies `instance` to a copy of `state`. Throws StaleInstance if no
/// conclusion changes the state.
Successors apply_r1(const SolverState& state, RuleInstance instance);

/// True iff the premise of Set Disequality holds for s ≉ t.
bool lacks_witness(const SolverState& state, SetId s, SetId t);

}  // namespace setcard
