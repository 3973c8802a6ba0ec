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

#include "setcard/cardgraph.hpp"

#include <algorithm>
#include <sstream>

namespace setcard {

namespace {

using K = TermBank::Kind;

bool includes(const std::vector<SetId>& big, const std::vector<SetId>& small) {
  for (SetId v : small) {
    if (std::find(big.begin(), big.end(), v) == big.end()) return false;
  }
  return true;
}

std::vector<SetId> minus(const std::vector<SetId>& a, const std::vector<SetId>& b) {
  std::vector<SetId> out;
  for (SetId v : a) {
    if (std::find(b.begin(), b.end(), v) == b.end()) out.push_back(v);
  }
  return out;
}

std::vector<SetId> sorted(std::vector<SetId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool add_node(SolverState& state, SetId s) {
  TermBank& bank = state.bank();
  const auto node = bank.node(s);
  if (!bank.is_composite(s)) {
    if (state.graph().contains(s)) return false;
    state.graph_mut().add_vertex(s);
    return true;
  }
  const SetId t = node.a;
  const SetId u = node.b;
  const SetId t_minus_u = bank.compose(K::Diff, t, u);
  const SetId t_inter_u = bank.compose(K::Inter, t, u);
  const SetId u_minus_t = bank.compose(K::Diff, u, t);
  const CardGraph& g = state.graph();
  bool missing = false;
  for (SetId v : {t, u, t_minus_u, t_inter_u, u_minus_t}) missing |= !g.contains(v);
  if (node.kind == K::Union) missing |= !g.contains(s);
  if (!missing) return false;

  CardGraph& gm = state.graph_mut();
  for (SetId v : {t, u, t_minus_u, t_inter_u, u_minus_t}) gm.add_vertex(v);
  gm.add_edge(t, t_minus_u);
  gm.add_edge(t, t_inter_u);
  gm.add_edge(u, t_inter_u);
  gm.add_edge(u, u_minus_t);
  if (node.kind == K::Union) {
    gm.add_vertex(s);
    gm.add_edge(s, t_minus_u);
    gm.add_edge(s, t_inter_u);
    gm.add_edge(s, u_minus_t);
  }
  return true;
}

std::vector<SetId> nonempty_leaves(const SolverState& state, SetId v) {
  std::vector<SetId> out;
  for (SetId l : state.graph().leaves(v)) {
    if (!state.known_empty(l)) out.push_back(l);
  }
  return out;
}

void merge(SolverState& state, SetId s, SetId t) {
  const auto ns = nonempty_leaves(state, s);
  const auto nt = nonempty_leaves(state, t);
  const auto l1s = minus(ns, nt);
  const auto l2s = minus(nt, ns);
  if (l1s.empty() || l2s.empty()) {
    throw PreconditionViolation("merge of " + state.bank().to_string(s) + " and " + state.bank().to_string(t) +
                                " requires incomparable non-empty leaves");
  }
  TermBank& bank = state.bank();
  CardGraph& g = state.graph_mut();
  for (SetId l1 : l1s) {
    for (SetId l2 : l2s) {
      const SetId m = bank.compose(K::Inter, l1, l2);
      g.add_vertex(m);
      g.add_edge(l1, m);
      g.add_edge(l2, m);
    }
  }
}

std::vector<RuleInstance> find_introduce(const SolverState& state, std::size_t limit) {
  std::vector<RuleInstance> out;
  const CardGraph& g = state.graph();
  const TermBank& bank = state.bank();
  auto full = [&] { return limit != 0 && out.size() >= limit; };
  auto push = [&](RuleTag tag, SetId s) { out.push_back(RuleInstance{tag, {{Effect::add_node(s)}}}); };

  for (const SetLit& l : state.lits()) {
    if (full()) return out;
    if (l.kind == SetLit::Kind::CardOf) {
      if (!g.contains(l.b)) push(RuleTag::IntroduceCard, l.b);
      continue;
    }
    if (l.kind != SetLit::Kind::Eq) continue;
    const bool has_s = g.contains(l.a);
    const bool has_t = g.contains(l.b);
    if (has_s && !has_t) {
      push(RuleTag::IntroduceEqRight, l.b);
    } else if (!has_s && has_t) {
      push(RuleTag::IntroduceEqLeft, l.a);
    } else if (!has_t && bank.is_composite(l.b)) {
      const auto& n = bank.node(l.b);
      const bool ta = g.contains(n.a);
      const bool tb = g.contains(n.b);
      if (n.kind == K::Union && (ta || tb)) push(RuleTag::IntroduceUnion, l.b);
      if (n.kind == K::Inter && ta && tb) push(RuleTag::IntroduceInter, l.b);
      if (n.kind == K::Diff && ta) push(RuleTag::IntroduceDiff, l.b);
    }
  }
  for (SetId s : state.set_terms()) {
    if (full()) return out;
    if (bank.node(s).kind == K::Singleton && !g.contains(s)) push(RuleTag::IntroduceSingleton, s);
  }
  if (!full() && !g.contains(kEmptySet)) push(RuleTag::IntroduceEmptySet, kEmptySet);
  return out;
}

std::vector<RuleInstance> find_guess_empty(const SolverState& state, std::size_t limit) {
  std::vector<RuleInstance> out;
  if (!state.graph().contains(kEmptySet)) return out;
  for (SetId t : state.graph().leaves()) {
    if (limit != 0 && out.size() >= limit) break;
    if (state.known_empty(t) || state.sets_distinct(t, kEmptySet)) continue;
    out.push_back(RuleInstance{RuleTag::GuessEmptySet,
                               {{Effect::set_literal(SetLit::eq(t, kEmptySet))},
                                {Effect::set_literal(SetLit::neq(t, kEmptySet))}}});
  }
  return out;
}

std::vector<RuleInstance> find_merge(const SolverState& state, std::size_t limit) {
  std::vector<RuleInstance> out;
  const CardGraph& g = state.graph();
  for (const SetLit& l : state.lits()) {
    if (limit != 0 && out.size() >= limit) break;
    if (l.kind != SetLit::Kind::Eq || !g.contains(l.a) || !g.contains(l.b)) continue;
    const auto ns = nonempty_leaves(state, l.a);
    const auto nt = nonempty_leaves(state, l.b);
    const bool s_in_t = includes(nt, ns);
    const bool t_in_s = includes(ns, nt);
    if (s_in_t && t_in_s) continue;
    if (s_in_t || t_in_s) {
      if (!g.contains(kEmptySet)) continue;
      std::vector<Effect> effects;
      for (SetId extra : s_in_t ? minus(nt, ns) : minus(ns, nt)) {
        effects.push_back(Effect::set_literal(SetLit::eq(extra, kEmptySet)));
      }
      out.push_back(RuleInstance{RuleTag::MergeEquality1, {std::move(effects)}});
    } else {
      out.push_back(RuleInstance{RuleTag::MergeEquality2, {{Effect::merge(l.a, l.b)}}});
    }
  }
  return out;
}

std::vector<RuleInstance> find_r2(const SolverState& state, bool guess_empty_set, std::size_t limit) {
  auto out = find_introduce(state, limit);
  auto append = [&](std::vector<RuleInstance> more) {
    for (auto& r : more) {
      if (limit != 0 && out.size() >= limit) return;
      out.push_back(std::move(r));
    }
  };
  if (guess_empty_set) append(find_guess_empty(state, limit));
  append(find_merge(state, limit));
  return out;
}

std::vector<CardAtom> InducedConstraints::all() const {
  std::vector<CardAtom> out = sums;
  out.insert(out.end(), nonneg.begin(), nonneg.end());
  out.insert(out.end(), singletons.begin(), singletons.end());
  out.insert(out.end(), empties.begin(), empties.end());
  return out;
}

InducedConstraints induced_constraints(const SolverState& state) {
  InducedConstraints out;
  const TermBank& bank = state.bank();
  for (SetId v : state.graph().vertices()) {
    const Term& cv = bank.card_var(v);
    const auto nl = nonempty_leaves(state, v);
    if (!(nl.size() == 1 && nl.front() == v)) {
      LinearForm sum;
      for (SetId l : nl) sum.add(bank.card_var(l), 1);
      out.sums.push_back(CardAtom::compare(LinearForm::of(cv), Relation::Eq, sum));
    }
    out.nonneg.push_back(CardAtom::geq(cv, 0));
    if (bank.node(v).kind == K::Singleton) {
      out.singletons.push_back(CardAtom::compare(LinearForm::of(cv), Relation::Eq, LinearForm(1)));
    }
    if (v == kEmptySet) out.empties.push_back(CardAtom::compare(LinearForm::of(cv), Relation::Eq, LinearForm(0)));
  }
  return out;
}

std::vector<std::string> check_graph_properties(const SolverState& state, bool check_equalities) {
  std::vector<std::string> out;
  const CardGraph& g = state.graph();
  const TermBank& bank = state.bank();
  if (!g.acyclic()) out.push_back("graph has a cycle");
  for (SetId v : g.vertices()) {
    if (!bank.is_composite(v)) continue;
    const auto& n = bank.node(v);
    if (!g.contains(n.a) || !g.contains(n.b)) continue;
    const auto nv = sorted(nonempty_leaves(state, v));
    const auto na = sorted(nonempty_leaves(state, n.a));
    const auto nb = sorted(nonempty_leaves(state, n.b));
    std::vector<SetId> expect;
    switch (n.kind) {
      case K::Union: std::set_union(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(expect)); break;
      case K::Inter:
        std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(expect));
        break;
      default: std::set_difference(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(expect)); break;
    }
    if (nv != expect) out.push_back("NL(" + bank.to_string(v) + ") does not match its operands");
  }
  if (check_equalities) {
    for (const SetLit& l : state.lits()) {
      if (l.kind != SetLit::Kind::Eq || !g.contains(l.a) || !g.contains(l.b)) continue;
      if (sorted(nonempty_leaves(state, l.a)) != sorted(nonempty_leaves(state, l.b))) {
        out.push_back("NL differs across " + state.lit_to_string(l));
      }
    }
  }
  return out;
}

std::string dot(const SolverState& state) {
  const CardGraph& g = state.graph();
  std::ostringstream os;
  os << "digraph G {\n";
  for (SetId v : g.vertices()) {
    os << "  n" << v << " [label=" << quote(state.bank().to_string(v));
    if (g.is_leaf(v) && !state.known_empty(v)) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& [p, c] : g.edges()) os << "  n" << p << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace setcard
