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

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setcard/lia.hpp"
#include "setcard/model.hpp"
#include "setcard/normalize.hpp"
#include "setcard/state.hpp"

namespace setcard {

class InternalInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolverOptions {
  /// Off defers Guess Empty Set until every other rule is saturated.
  bool guess_empty_set = true;
  bool guess_lower_bound = false;
  /// 0 means unlimited.
  std::uint64_t decision_limit = 0;
  std::uint64_t time_limit_ms = 0;
  /// Check the lexicographic decrease of the termination measure on every
  /// rule application (Guess Lower Bound excepted).
  bool check_measure = false;
  /// Check the non-empty-leaf identities after every graph rule.
  bool check_graph = false;
  /// Keep a DOT rendering of the largest graph seen.
  bool keep_peak_graph = false;
  LiaOptions lia;
  /// Called after every rule application with the resulting state. Closing
  /// rules report the state they closed.
  std::function<void(const SolverState&, RuleTag)> observer;
};

struct Stats {
  std::uint64_t decisions = 0;
  std::array<std::uint64_t, kRuleTagCount> rule_counts{};
  std::size_t max_vertices = 0;
  std::size_t max_leaves = 0;
  std::size_t max_branch_literals = 0;
  std::uint64_t lia_checks = 0;
  double elapsed_ms = 0;

  std::uint64_t measure_checks = 0;
  std::uint64_t measure_violations = 0;
  std::uint64_t graph_checks = 0;
  std::uint64_t graph_violations = 0;
  /// First few violation descriptions.
  std::vector<std::string> violation_samples;

  std::string peak_graph_dot;

  std::uint64_t applications() const;
};

enum class Outcome : std::uint8_t { Sat, Unsat, Unknown };
std::string_view to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Model> model;
  Stats stats;
  /// Why the verdict is unknown.
  std::string reason;
};

/// f1..f9.
using Measure = std::array<std::int64_t, 9>;
Measure termination_measure(const SolverState& state);
std::string to_string(const Measure& m);

/// Propagate Minsize, then Guess Lower Bound (if enabled), then Members
/// Arrangement, over graph leaves in vertex order.
std::vector<RuleInstance> find_r3(const SolverState& state, bool guess_lower_bound, std::size_t limit = 0);

/// The root state for `problem`, interning into `bank`.
SolverState initial_state(const FlatProblem& problem, std::shared_ptr<TermBank> bank);

/// Model of a saturated, open state from an arithmetic model of A ∪ Ĝ.
/// Throws InternalInvariantViolation if a leaf holds more known members than
/// its cardinality allows.
Model build_model(const SolverState& state, const std::map<Term, std::int64_t>& arith);

class Solver {
 public:
  explicit Solver(const FlatProblem& problem, SolverOptions options = {});

  Verdict run();
  const SolverState& state() const { return state_; }
  const TermBank& bank() const { return *bank_; }

 private:
  struct Frame {
    SolverState::Checkpoint checkpoint;
    RuleInstance instance;
    std::size_t next = 1;
    Measure before{};
  };

  bool over_limits() const;
  void observe(RuleTag tag);
  void apply(const RuleInstance& instance);
  void branch(RuleInstance instance);
  bool backtrack();
  bool arith_conflict();
  void check_after(RuleTag tag, const Measure& before);
  void record_violation(std::string what);

  std::shared_ptr<TermBank> bank_;
  SolverState state_;
  SolverOptions options_;
  bool card_mode_ = false;
  std::vector<Frame> stack_;
  Stats stats_;
  std::uint64_t checked_arith_version_ = ~std::uint64_t{0};
  std::chrono::steady_clock::time_point start_;
};

Verdict solve(const FlatProblem& problem, const SolverOptions& options = {});

}  // namespace setcard
