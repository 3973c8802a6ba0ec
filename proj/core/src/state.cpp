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

#include "setcard/state.hpp"

#include <algorithm>

#include "setcard/cardgraph.hpp"

namespace setcard {

// ---------------------------------------------------------------------------
// TermBank

TermBank::TermBank() { add(Node{Kind::Empty}, Term::empty_set()); }

ElemId TermBank::element(const std::string& name) {
  if (auto it = elem_index_.find(name); it != elem_index_.end()) return it->second;
  const ElemId id = static_cast<ElemId>(elem_names_.size());
  elem_index_.emplace(name, id);
  elem_names_.push_back(name);
  elem_terms_.push_back(Term::element(name));
  fresh_flags_.push_back(0);
  return id;
}

ElemId TermBank::fresh_element() {
  const ElemId id = element(fresh_elems_.next());
  fresh_flags_[id] = 1;
  return id;
}

std::optional<ElemId> TermBank::find_element(const std::string& name) const {
  auto it = elem_index_.find(name);
  if (it == elem_index_.end()) return std::nullopt;
  return it->second;
}

SetId TermBank::add(Node node, Term term) {
  auto key = std::make_tuple(node.kind, node.a, node.b, node.name);
  if (auto it = node_index_.find(key); it != node_index_.end()) return it->second;
  const SetId id = static_cast<SetId>(nodes_.size());
  node_index_.emplace(std::move(key), id);
  nodes_.push_back(std::move(node));
  cards_.push_back(card_var_of(term));
  terms_.push_back(std::move(term));
  return id;
}

SetId TermBank::set_var(const std::string& name) {
  Node n{Kind::Var};
  n.name = name;
  return add(std::move(n), Term::set(name));
}

SetId TermBank::singleton(ElemId x) {
  return add(Node{Kind::Singleton, x}, Term::singleton(element_term(x)));
}

SetId TermBank::compose(Kind kind, SetId a, SetId b) {
  Op op = Op::Union;
  if (kind == Kind::Inter) op = Op::Inter;
  if (kind == Kind::Diff) op = Op::Diff;
  auto key = std::make_tuple(kind, a, b, std::string());
  if (auto it = node_index_.find(key); it != node_index_.end()) return it->second;
  return add(Node{kind, a, b}, Term::apply(op, {term(a), term(b)}));
}

bool TermBank::is_composite(SetId s) const {
  const Kind k = node(s).kind;
  return k == Kind::Union || k == Kind::Inter || k == Kind::Diff;
}

SetId TermBank::intern(const Term& t) {
  switch (t.op()) {
    case Op::Var: return set_var(t.name());
    case Op::EmptySet: return kEmptySet;
    case Op::Singleton: return singleton(element(t.arg(0).name()));
    case Op::Union: return compose(Kind::Union, intern(t.arg(0)), intern(t.arg(1)));
    case Op::Inter: return compose(Kind::Inter, intern(t.arg(0)), intern(t.arg(1)));
    case Op::Diff: return compose(Kind::Diff, intern(t.arg(0)), intern(t.arg(1)));
    default: throw SortError("not a set term: " + t.to_smtlib());
  }
}

std::optional<SetId> TermBank::find(const Term& t) const {
  auto lookup = [&](Kind k, std::uint32_t a, std::uint32_t b, const std::string& name) -> std::optional<SetId> {
    auto it = node_index_.find(std::make_tuple(k, a, b, name));
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
  };
  switch (t.op()) {
    case Op::Var: return lookup(Kind::Var, 0, 0, t.name());
    case Op::EmptySet: return kEmptySet;
    case Op::Singleton: {
      auto x = find_element(t.arg(0).name());
      if (!x) return std::nullopt;
      return lookup(Kind::Singleton, *x, 0, "");
    }
    case Op::Union:
    case Op::Inter:
    case Op::Diff: {
      auto a = find(t.arg(0));
      auto b = find(t.arg(1));
      if (!a || !b) return std::nullopt;
      const Kind k = t.op() == Op::Union ? Kind::Union : t.op() == Op::Inter ? Kind::Inter : Kind::Diff;
      return lookup(k, *a, *b, "");
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// RuleTag

std::string_view to_string(RuleTag tag) {
  switch (tag) {
    case RuleTag::UnionDown1: return "Union Down I";
    case RuleTag::UnionDown2: return "Union Down II";
    case RuleTag::UnionUp1: return "Union Up I";
    case RuleTag::UnionUp2: return "Union Up II";
    case RuleTag::InterDown1: return "Inter Down I";
    case RuleTag::InterDown2: return "Inter Down II";
    case RuleTag::InterUp1: return "Inter Up I";
    case RuleTag::InterUp2: return "Inter Up II";
    case RuleTag::UnionSplit: return "Union split";
    case RuleTag::InterSplit: return "Inter split";
    case RuleTag::DiffDown1: return "Set difference Down 1";
    case RuleTag::DiffDown2: return "Set difference Down 2";
    case RuleTag::DiffDown3: return "Set difference Down 3";
    case RuleTag::DiffUp1: return "Set difference Up 1";
    case RuleTag::DiffUp2: return "Set difference Up 2";
    case RuleTag::DiffUp3: return "Set difference Up 3";
    case RuleTag::DiffSplit: return "Set difference split";
    case RuleTag::Singleton: return "Singleton";
    case RuleTag::SingleMember: return "Single Member";
    case RuleTag::SingleNonMember: return "Single Non-member";
    case RuleTag::SetDisequality: return "Set Disequality";
    case RuleTag::EqUnsat: return "Eq Unsat";
    case RuleTag::SetUnsat: return "Set Unsat";
    case RuleTag::EmptyUnsat: return "Empty Unsat";
    case RuleTag::IntroduceEqRight: return "Introduce Eq Right";
    case RuleTag::IntroduceEqLeft: return "Introduce Eq Left";
    case RuleTag::IntroduceUnion: return "Introduce Union";
    case RuleTag::IntroduceInter: return "Introduce Inter";
    case RuleTag::IntroduceDiff: return "Introduce Set difference";
    case RuleTag::IntroduceCard: return "Introduce Card";
    case RuleTag::IntroduceSingleton: return "Introduce Singleton";
    case RuleTag::IntroduceEmptySet: return "Introduce Empty Set";
    case RuleTag::MergeEquality1: return "Merge Equality I";
    case RuleTag::MergeEquality2: return "Merge Equality II";
    case RuleTag::GuessEmptySet: return "Guess Empty Set";
    case RuleTag::ArithContradiction: return "Arithmetic contradiction";
    case RuleTag::MembersArrangement: return "Members Arrangement";
    case RuleTag::PropagateMinsize: return "Propagate Minsize";
    case RuleTag::GuessLowerBound: return "Guess Lower Bound";
  }
  return "?";
}

bool is_closing(RuleTag tag) {
  return tag == RuleTag::EqUnsat || tag == RuleTag::SetUnsat || tag == RuleTag::EmptyUnsat ||
         tag == RuleTag::ArithContradiction;
}

bool is_graph_rule(RuleTag tag) {
  return tag >= RuleTag::IntroduceEqRight && tag <= RuleTag::GuessEmptySet;
}

// ---------------------------------------------------------------------------
// SolverState

SolverState::SolverState(std::shared_ptr<TermBank> bank) : bank_(std::move(bank)) {}

void SolverState::touch() { ++version_; }

SetId SolverState::find_set(SetId s) const {
  if (s >= set_parent_.size()) return s;
  while (set_parent_[s] != s) s = set_parent_[s];
  return s;
}

SetId SolverState::set_root(SetId s) const { return find_set(s); }

void SolverState::union_sets(SetId s, SetId t) {
  const std::size_t need = std::max<std::size_t>(s, t) + 1;
  while (set_parent_.size() < need) {
    set_parent_.push_back(static_cast<SetId>(set_parent_.size()));
    set_size_.push_back(1);
  }
  SetId rs = find_set(s);
  SetId rt = find_set(t);
  if (rs == rt) return;
  if (set_size_[rs] > set_size_[rt]) std::swap(rs, rt);
  set_parent_[rs] = rt;
  set_size_[rt] += set_size_[rs];
  set_trail_.emplace_back(rs, rt);
}

ElemId SolverState::elem_root(ElemId x) const {
  if (x >= eq_.size()) return x;
  return eq_.root(x);
}

void SolverState::register_term(SetId s) {
  if (in_set_terms(s)) return;
  if (term_flags_.size() <= s) term_flags_.resize(s + 1, 0);
  const auto& n = bank_->node(s);
  if (bank_->is_composite(s)) {
    register_term(n.a);
    register_term(n.b);
  } else if (n.kind == TermBank::Kind::Singleton) {
    register_elem(n.a);
  }
  term_flags_[s] = 1;
  terms_.push_back(s);
}

void SolverState::register_elem(ElemId x) {
  if (in_elem_terms(x)) return;
  if (elem_flags_.size() <= x) elem_flags_.resize(x + 1, 0);
  elem_flags_[x] = 1;
  elems_.push_back(x);
  eq_.ensure(static_cast<std::uint32_t>(bank_->element_count()));
}

const MembershipIndex& SolverState::index() const {
  if (index_version_ == version_) return index_;
  index_ = MembershipIndex{};
  for (const SetLit& l : lits_) {
    if (l.kind == SetLit::Kind::Member || l.kind == SetLit::Kind::NotMember) {
      const ElemId e = elem_root(l.a);
      const SetId s = set_root(l.b);
      auto [it, fresh] = index_.bits.try_emplace(MembershipIndex::key(e, s), 0);
      if (fresh) index_.by_set[s].push_back(e);
      it->second |= l.kind == SetLit::Kind::Member ? kIn : kOut;
      if (it->second == (kIn | kOut) && !index_.conflict) index_.conflict = std::make_pair(e, s);
    } else if (l.kind == SetLit::Kind::Neq) {
      const SetId a = set_root(l.a);
      const SetId b = set_root(l.b);
      index_.neq_roots.emplace(std::min(a, b), std::max(a, b));
    }
  }
  index_version_ = version_;
  return index_;
}

std::uint8_t SolverState::membership(ElemId x, SetId s) const {
  const auto& idx = index();
  auto it = idx.bits.find(MembershipIndex::key(elem_root(x), set_root(s)));
  return it == idx.bits.end() ? 0 : it->second;
}

bool SolverState::sets_distinct(SetId s, SetId t) const {
  const SetId a = set_root(s);
  const SetId b = set_root(t);
  return index().neq_roots.count({std::min(a, b), std::max(a, b)}) != 0;
}

bool SolverState::in_sstar(const SetLit& lit) const {
  switch (lit.kind) {
    case SetLit::Kind::Member: return (membership(lit.a, lit.b) & kIn) != 0;
    case SetLit::Kind::NotMember: return (membership(lit.a, lit.b) & kOut) != 0;
    case SetLit::Kind::Eq: return sets_equal(lit.a, lit.b);
    case SetLit::Kind::Neq: return sets_distinct(lit.a, lit.b);
    case SetLit::Kind::CardOf: return std::find(lits_.begin(), lits_.end(), lit) != lits_.end();
  }
  return false;
}

bool SolverState::add_lit(const SetLit& lit) {
  if (in_sstar(lit)) return false;
  switch (lit.kind) {
    case SetLit::Kind::Member:
    case SetLit::Kind::NotMember:
      register_elem(lit.a);
      register_term(lit.b);
      break;
    case SetLit::Kind::Eq:
      register_term(lit.a);
      register_term(lit.b);
      union_sets(lit.a, lit.b);
      ++arith_version_;
      break;
    case SetLit::Kind::Neq:
      register_term(lit.a);
      register_term(lit.b);
      break;
    case SetLit::Kind::CardOf: register_term(lit.b); break;
  }
  lits_.push_back(lit);
  touch();
  return true;
}

bool SolverState::add_elem_eq(ElemId x, ElemId y) {
  register_elem(x);
  register_elem(y);
  if (eq_.in_mstar_eq(x, y)) return false;
  eq_.assert_eq(x, y);
  touch();
  return true;
}

bool SolverState::add_elem_neq(ElemId x, ElemId y) {
  register_elem(x);
  register_elem(y);
  if (eq_.in_mstar_neq(x, y)) return false;
  eq_.assert_neq(x, y);
  touch();
  return true;
}

bool SolverState::add_atom(const CardAtom& atom) {
  if (std::find(atoms_.begin(), atoms_.end(), atom) != atoms_.end()) return false;
  atoms_.push_back(atom);
  ++arith_version_;
  touch();
  return true;
}

CardGraph& SolverState::graph_mut() {
  ++arith_version_;
  touch();
  return graph_;
}

std::vector<SetId> SolverState::relevant_terms() const {
  std::vector<SetId> out = terms_;
  for (SetId v : graph_.vertices()) {
    if (!in_set_terms(v)) out.push_back(v);
  }
  return out;
}

SolverState::Checkpoint SolverState::checkpoint() const {
  return Checkpoint{lits_.size(), set_trail_.size(), eq_.snapshot(), atoms_.size(),
                    graph_.mark(),  terms_.size(),     elems_.size()};
}

void SolverState::rollback(const Checkpoint& cp) {
  lits_.resize(cp.lits);
  while (set_trail_.size() > cp.set_trail) {
    const auto [absorbed, root] = set_trail_.back();
    set_trail_.pop_back();
    set_parent_[absorbed] = absorbed;
    set_size_[root] -= set_size_[absorbed];
  }
  eq_.rollback(cp.eq);
  atoms_.resize(cp.atoms);
  graph_.rollback(cp.graph);
  while (terms_.size() > cp.terms) {
    term_flags_[terms_.back()] = 0;
    terms_.pop_back();
  }
  while (elems_.size() > cp.elems) {
    elem_flags_[elems_.back()] = 0;
    elems_.pop_back();
  }
  ++arith_version_;
  touch();
}

std::string SolverState::lit_to_string(const SetLit& lit) const {
  auto set = [&](SetId s) { return bank_->to_string(s); };
  auto wrap = [&](SetId s) { return bank_->is_composite(s) ? "(" + set(s) + ")" : set(s); };
  switch (lit.kind) {
    case SetLit::Kind::Member: return bank_->element_name(lit.a) + " ∈ " + wrap(lit.b);
    case SetLit::Kind::NotMember: return bank_->element_name(lit.a) + " ∉ " + wrap(lit.b);
    case SetLit::Kind::Eq: return set(lit.a) + " ≈ " + set(lit.b);
    case SetLit::Kind::Neq: return set(lit.a) + " ≉ " + set(lit.b);
    case SetLit::Kind::CardOf: return bank_->card_var(lit.b).to_string() + " ≈ |" + set(lit.b) + "|";
  }
  return "?";
}

bool apply_effects(SolverState& state, const std::vector<Effect>& effects) {
  bool changed = false;
  for (const Effect& e : effects) {
    switch (e.kind) {
      case Effect::Kind::SetLiteral: changed |= state.add_lit(e.lit); break;
      case Effect::Kind::ElemEq: changed |= state.add_elem_eq(e.a, e.b); break;
      case Effect::Kind::ElemNeq: changed |= state.add_elem_neq(e.a, e.b); break;
      case Effect::Kind::Atom: changed |= state.add_atom(e.atom); break;
      case Effect::Kind::AddNode: changed |= add_node(state, e.a); break;
      case Effect::Kind::Merge: merge(state, e.a, e.b); changed = true; break;
    }
  }
  return changed;
}

}  // namespace setcard
