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

#include "setcard/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "setcard/cardgraph.hpp"
#include "setcard/setrules.hpp"

namespace setcard {

namespace {

constexpr std::size_t kMaxSamples = 8;

// Element roots known to be in `t`, in first-literal order.
std::vector<ElemId> known_members(const SolverState& state, SetId t) {
  std::vector<ElemId> out;
  const auto& idx = state.index();
  const SetId r = state.set_root(t);
  auto it = idx.by_set.find(r);
  if (it == idx.by_set.end()) return out;
  for (ElemId e : it->second) {
    if (idx.bits.at(MembershipIndex::key(e, r)) & kIn) out.push_back(e);
  }
  return out;
}

std::vector<SetId> sorted_nl(const SolverState& state, SetId v) {
  auto nl = nonempty_leaves(state, v);
  std::sort(nl.begin(), nl.end());
  return nl;
}

LinearSystem arith_system(const SolverState& state) {
  LinearSystem sys;
  std::set<Term> vars;
  for (const auto& a : state.atoms()) {
    sys.add(a);
    for (const auto& [k, v] : a.lhs.terms()) vars.insert(v);
  }
  for (auto& a : induced_constraints(state).all()) sys.add(std::move(a));
  for (const auto& v : vars) sys.add(CardAtom::geq(v, 0));
  return sys;
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Sat: return "sat";
    case Outcome::Unsat: return "unsat";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

std::uint64_t Stats::applications() const {
  return std::accumulate(rule_counts.begin(), rule_counts.end(), std::uint64_t{0});
}

std::string to_string(const Measure& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(m[i]);
  }
  return out + ")";
}

Measure termination_measure(const SolverState& st) {
  const CardGraph& g = st.graph();
  const TermBank& bank = st.bank();
  Measure m{};

  std::vector<SetId> universe;
  std::vector<char> in_universe(bank.size(), 0);
  auto add = [&](SetId s) {
    if (!in_universe[s]) {
      in_universe[s] = 1;
      universe.push_back(s);
    }
  };
  for (SetId s : st.set_terms()) add(s);
  add(kEmptySet);
  for (SetId v : g.vertices()) add(v);

  for (const SetLit& l : st.lits()) {
    if (l.kind == SetLit::Kind::Eq) {
      if (!g.contains(l.a) || !g.contains(l.b) || sorted_nl(st, l.a) != sorted_nl(st, l.b)) ++m[0];
    } else if (l.kind == SetLit::Kind::Neq) {
      if (lacks_witness(st, l.a, l.b)) ++m[3];
    }
  }
  if (!g.contains(kEmptySet)) ++m[1];
  for (SetId s : st.set_terms()) {
    if (s != kEmptySet && !g.contains(s)) ++m[1];
  }
  for (SetId t : g.leaves()) {
    if (!st.known_empty(t) && !st.sets_distinct(t, kEmptySet)) ++m[2];
  }
  const std::int64_t f5 = static_cast<std::int64_t>(universe.size());
  const auto& elems = st.elem_terms();
  const std::int64_t f6 = static_cast<std::int64_t>(elems.size());
  m[4] = f5;
  m[5] = f6;

  std::unordered_map<ElemId, std::int64_t> class_size;
  for (ElemId x : elems) ++class_size[st.elem_root(x)];
  std::int64_t mstar = 0;
  for (const auto& [r, n] : class_size) mstar += n * n;
  for (ElemId x : elems) {
    for (ElemId y : elems) mstar += st.eq().in_mstar_neq(x, y) ? 1 : 0;
  }
  m[6] = 2 * f6 * f6 - mstar;

  std::int64_t sstar = 0;
  for (SetId s : universe) {
    for (SetId t : universe) {
      if (st.sets_equal(s, t)) ++sstar;
      if (st.sets_distinct(s, t)) ++sstar;
    }
    for (ElemId x : elems) {
      const auto b = st.membership(x, s);
      sstar += ((b & kIn) ? 1 : 0) + ((b & kOut) ? 1 : 0);
    }
  }
  m[7] = 2 * f5 * f5 + 2 * f5 * f6 - sstar;

  for (SetId t : g.leaves()) {
    const auto n = static_cast<std::int64_t>(known_members(st, t).size());
    if (!syntactic_geq(st.atoms(), bank.card_var(t), n)) ++m[8];
  }
  return m;
}

std::vector<RuleInstance> find_r3(const SolverState& state, bool guess_lower_bound, std::size_t limit) {
  std::vector<RuleInstance> out;
  auto full = [&] { return limit != 0 && out.size() >= limit; };
  const TermBank& bank = state.bank();
  const auto& atoms = state.atoms();

  struct Leaf {
    SetId t;
    std::vector<ElemId> members;
    bool bounded;
  };
  std::vector<Leaf> leaves;
  for (SetId t : state.graph().leaves()) {
    auto members = known_members(state, t);
    const bool bounded = syntactic_geq(atoms, bank.card_var(t), static_cast<std::int64_t>(members.size()));
    leaves.push_back(Leaf{t, std::move(members), bounded});
  }
  auto pairwise_distinct = [&](const std::vector<ElemId>& xs) -> std::optional<std::pair<ElemId, ElemId>> {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (!state.eq().in_mstar_neq(xs[i], xs[j])) return std::make_pair(xs[i], xs[j]);
      }
    }
    return std::nullopt;
  };

  for (const Leaf& l : leaves) {
    if (full()) return out;
    if (l.bounded || l.members.empty() || pairwise_distinct(l.members)) continue;
    const auto n = static_cast<std::int64_t>(l.members.size());
    out.push_back(RuleInstance{RuleTag::PropagateMinsize, {{Effect::card_atom(CardAtom::geq(bank.card_var(l.t), n))}}});
  }
  if (guess_lower_bound) {
    for (const Leaf& l : leaves) {
      if (full()) return out;
      if (l.bounded || l.members.empty()) continue;
      const auto n = static_cast<std::int64_t>(l.members.size());
      const Term& c = bank.card_var(l.t);
      CardAtom below = CardAtom::compare(LinearForm::of(c), Relation::Lt, LinearForm(n));
      if (std::find(atoms.begin(), atoms.end(), below) != atoms.end()) continue;
      out.push_back(RuleInstance{RuleTag::GuessLowerBound,
                                 {{Effect::card_atom(CardAtom::geq(c, n))}, {Effect::card_atom(std::move(below))}}});
    }
  }
  for (const Leaf& l : leaves) {
    if (full()) return out;
    if (l.bounded) continue;
    if (auto pair = pairwise_distinct(l.members)) {
      out.push_back(RuleInstance{RuleTag::MembersArrangement,
                                 {{Effect::elem_eq(pair->first, pair->second)},
                                  {Effect::elem_neq(pair->first, pair->second)}}});
    }
  }
  return out;
}

SolverState initial_state(const FlatProblem& problem, std::shared_ptr<TermBank> bank) {
  TermBank& b = *bank;
  SolverState st(std::move(bank));
  using CK = Constraint::Kind;
  for (const auto& c : problem.set_constraints) {
    switch (c.kind()) {
      case CK::SetEq: st.add_lit(SetLit::eq(b.intern(c.lhs()), b.intern(c.rhs()))); break;
      case CK::SetNeq: st.add_lit(SetLit::neq(b.intern(c.lhs()), b.intern(c.rhs()))); break;
      case CK::Member: st.add_lit(SetLit::member(b.element(c.lhs().name()), b.intern(c.rhs()))); break;
      case CK::NotMember: st.add_lit(SetLit::not_member(b.element(c.lhs().name()), b.intern(c.rhs()))); break;
      case CK::CardOf: st.add_lit(SetLit::card_of(b.intern(c.rhs()))); break;
      default: throw InternalInvariantViolation("unexpected set constraint " + c.to_string());
    }
  }
  for (const auto& c : problem.elem_constraints) {
    const ElemId x = b.element(c.lhs().name());
    const ElemId y = b.element(c.rhs().name());
    if (c.kind() == CK::ElemEq) {
      st.add_elem_eq(x, y);
    } else {
      st.add_elem_neq(x, y);
    }
  }
  for (const auto& a : problem.card_atoms) st.add_atom(a);
  return st;
}

Model build_model(const SolverState& st, const std::map<Term, std::int64_t>& arith) {
  const TermBank& bank = st.bank();
  Model model;

  std::map<ElemId, std::uint32_t> value_of_root;
  for (ElemId x : st.elem_terms()) {
    const ElemId r = st.elem_root(x);
    auto [it, fresh] = value_of_root.try_emplace(r, static_cast<std::uint32_t>(value_of_root.size()));
    if (!bank.is_fresh_element(x)) model.elements[bank.element_name(x)] = it->second;
  }
  std::uint32_t next_id = static_cast<std::uint32_t>(value_of_root.size());
  // Elements whose only literals were trivially true.
  for (ElemId x = 0; x < bank.element_count(); ++x) {
    if (!bank.is_fresh_element(x) && !model.elements.count(bank.element_name(x))) {
      model.elements[bank.element_name(x)] = next_id++;
    }
  }

  auto known = [&](SetId s) {
    std::set<std::uint32_t> out;
    for (ElemId e : known_members(st, s)) out.insert(value_of_root.at(e));
    return out;
  };
  auto arith_value = [&](const Term& c) -> std::optional<std::int64_t> {
    auto it = arith.find(c);
    if (it == arith.end()) return std::nullopt;
    return it->second;
  };

  const CardGraph& g = st.graph();
  std::map<SetId, std::set<std::uint32_t>> leaf_value;
  for (SetId t : g.leaves()) {
    auto members = known(t);
    if (st.known_empty(t)) {
      leaf_value[t] = std::move(members);
      continue;
    }
    const std::int64_t c = arith_value(bank.card_var(t)).value_or(0);
    const auto have = static_cast<std::int64_t>(members.size());
    if (c < have) {
      throw InternalInvariantViolation("leaf " + bank.to_string(t) + " has " + std::to_string(have) +
                                       " known members but cardinality " + std::to_string(c));
    }
    for (std::int64_t i = have; i < c; ++i) {
      model.padding.insert(next_id);
      members.insert(next_id++);
    }
    leaf_value[t] = std::move(members);
  }

  for (SetId s = 0; s < bank.size(); ++s) {
    if (bank.node(s).kind != TermBank::Kind::Var) continue;
    std::set<std::uint32_t> value;
    if (g.contains(s)) {
      for (SetId t : nonempty_leaves(st, s)) value.insert(leaf_value[t].begin(), leaf_value[t].end());
    } else if (st.in_set_terms(s)) {
      value = known(s);
    }
    model.sets[bank.node(s).name] = std::move(value);
  }

  for (const SetLit& l : st.lits()) {
    if (l.kind != SetLit::Kind::CardOf || bank.node(l.b).kind != TermBank::Kind::Var) continue;
    const Term& c = bank.card_var(l.b);
    model.cards[c] = arith_value(c).value_or(static_cast<std::int64_t>(model.sets[bank.node(l.b).name].size()));
  }
  for (const auto& a : st.atoms()) {
    for (const auto& [k, v] : a.lhs.terms()) {
      if (v.is_var()) model.cards[v] = arith_value(v).value_or(0);
    }
  }
  return model;
}

Solver::Solver(const FlatProblem& problem, SolverOptions options)
    : bank_(std::make_shared<TermBank>()), state_(initial_state(problem, bank_)), options_(std::move(options)) {
  for (const auto& c : problem.set_constraints) card_mode_ |= c.kind() == Constraint::Kind::CardOf;
}

bool Solver::over_limits() const {
  if (options_.decision_limit != 0 && stats_.decisions >= options_.decision_limit) return true;
  if (options_.time_limit_ms != 0) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    if (static_cast<std::uint64_t>(ms.count()) >= options_.time_limit_ms) return true;
  }
  return false;
}

void Solver::record_violation(std::string what) {
  if (stats_.violation_samples.size() < kMaxSamples) stats_.violation_samples.push_back(std::move(what));
}

void Solver::observe(RuleTag tag) {
  ++stats_.rule_counts[static_cast<std::size_t>(tag)];
  const CardGraph& g = state_.graph();
  if (g.vertices().size() > stats_.max_vertices) {
    stats_.max_vertices = g.vertices().size();
    if (options_.keep_peak_graph) stats_.peak_graph_dot = dot(state_);
  }
  stats_.max_leaves = std::max(stats_.max_leaves, g.leaves().size());
  stats_.max_branch_literals = std::max(stats_.max_branch_literals, state_.lits().size());
  if (options_.observer) options_.observer(state_, tag);
}

void Solver::check_after(RuleTag tag, const Measure& before) {
  if (options_.check_measure && tag != RuleTag::GuessLowerBound) {
    ++stats_.measure_checks;
    const Measure after = termination_measure(state_);
    if (!(after < before)) {
      ++stats_.measure_violations;
      record_violation(std::string(to_string(tag)) + ": " + to_string(before) + " -> " + to_string(after));
    }
  }
  if (options_.check_graph && is_graph_rule(tag)) {
    ++stats_.graph_checks;
    for (auto& v : check_graph_properties(state_, false)) {
      ++stats_.graph_violations;
      record_violation(std::string(to_string(tag)) + ": " + v);
    }
  }
}

void Solver::apply(const RuleInstance& instance) {
  const Measure before = options_.check_measure ? termination_measure(state_) : Measure{};
  if (!apply_effects(state_, instance.branches.front())) {
    throw InternalInvariantViolation(std::string(to_string(instance.tag)) + " did not change the state");
  }
  check_after(instance.tag, before);
  observe(instance.tag);
}

void Solver::branch(RuleInstance instance) {
  bind_witness(instance, *bank_);
  ++stats_.decisions;
  Frame f{state_.checkpoint(), std::move(instance), 1, {}};
  if (options_.check_measure) f.before = termination_measure(state_);
  stack_.push_back(std::move(f));
  const Frame& top = stack_.back();
  apply_effects(state_, top.instance.branches.front());
  check_after(top.instance.tag, top.before);
  observe(top.instance.tag);
}

bool Solver::backtrack() {
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    if (top.next < top.instance.branches.size()) {
      state_.rollback(top.checkpoint);
      apply_effects(state_, top.instance.branches[top.next++]);
      check_after(top.instance.tag, top.before);
      if (options_.observer) options_.observer(state_, top.instance.tag);
      return true;
    }
    stack_.pop_back();
  }
  return false;
}

bool Solver::arith_conflict() {
  if (state_.atoms().empty() && state_.graph().vertices().empty()) return false;
  if (checked_arith_version_ == state_.arith_version()) return false;
  checked_arith_version_ = state_.arith_version();
  ++stats_.lia_checks;
  return !check(arith_system(state_), options_.lia).sat;
}

Verdict Solver::run() {
  start_ = std::chrono::steady_clock::now();
  Verdict verdict;
  auto finish = [&](Outcome outcome) {
    verdict.outcome = outcome;
    stats_.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    verdict.stats = stats_;
    return verdict;
  };
  auto close = [&](RuleTag tag) {
    ++stats_.rule_counts[static_cast<std::size_t>(tag)];
    if (options_.observer) options_.observer(state_, tag);
    return backtrack();
  };

  stats_.max_branch_literals = state_.lits().size();
  try {
    while (true) {
      if (over_limits()) {
        verdict.reason = "resource limit reached";
        return finish(Outcome::Unknown);
      }
      // Closing rules.
      if (auto r = find_r1(state_, R1Tier::Closing, 1); !r.empty()) {
        if (!close(r.front().tag)) return finish(Outcome::Unsat);
        continue;
      }
      if (arith_conflict()) {
        if (!close(RuleTag::ArithContradiction)) return finish(Outcome::Unsat);
        continue;
      }
      if (auto r = find_r1(state_, R1Tier::Propagation, 1); !r.empty()) {
        apply(r.front());
        continue;
      }
      if (auto r = find_r1(state_, R1Tier::Split, 1); !r.empty()) {
        branch(std::move(r.front()));
        continue;
      }
      if (card_mode_) {
        if (auto r = find_introduce(state_, 1); !r.empty()) {
          apply(r.front());
          continue;
        }
        if (options_.guess_empty_set) {
          if (auto r = find_guess_empty(state_, 1); !r.empty()) {
            branch(std::move(r.front()));
            continue;
          }
        }
        if (auto r = find_merge(state_, 1); !r.empty()) {
          apply(r.front());
          continue;
        }
        if (options_.check_graph) {
          ++stats_.graph_checks;
          for (auto& v : check_graph_properties(state_, true)) {
            ++stats_.graph_violations;
            record_violation("at graph saturation: " + v);
          }
        }
        if (auto r = find_r3(state_, options_.guess_lower_bound, 1); !r.empty()) {
          if (r.front().branching()) {
            branch(std::move(r.front()));
          } else {
            apply(r.front());
          }
          continue;
        }
        // Deferred rather than dropped: saturated leaves must be decided.
        if (!options_.guess_empty_set) {
          if (auto r = find_guess_empty(state_, 1); !r.empty()) {
            branch(std::move(r.front()));
            continue;
          }
        }
      }
      // Saturated.
      std::map<Term, std::int64_t> arith;
      if (!state_.atoms().empty() || !state_.graph().vertices().empty()) {
        ++stats_.lia_checks;
        auto res = check(arith_system(state_), options_.lia);
        if (!res.sat) throw InternalInvariantViolation("arithmetic became inconsistent at saturation");
        arith = std::move(res.model);
      }
      verdict.model = build_model(state_, arith);
      if (options_.keep_peak_graph && stats_.peak_graph_dot.empty()) stats_.peak_graph_dot = dot(state_);
      return finish(Outcome::Sat);
    }
  } catch (const ResourceLimit& e) {
    verdict.reason = e.what();
    return finish(Outcome::Unknown);
  }
}

Verdict solve(const FlatProblem& problem, const SolverOptions& options) { return Solver(problem, options).run(); }

}  // namespace setcard
