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
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/eqengine.hpp"
#include "setcard/graph.hpp"

namespace setcard {

inline constexpr SetId kEmptySet = 0;
/// Placeholder for the fresh element of a Set Disequality instance.
inline constexpr ElemId kWitness = std::numeric_limits<ElemId>::max();

/// Append-only interning of element variables and set terms. Shared by all
/// branches of one search; ids are never reused.
class TermBank {
 public:
  enum class Kind : std::uint8_t { Var, Empty, Singleton, Union, Inter, Diff };
  struct Node {
    Kind kind;
    std::uint32_t a = 0;  // element for Singleton, left operand otherwise
    std::uint32_t b = 0;
    std::string name{};
  };

  TermBank();

  ElemId element(const std::string& name);
  ElemId fresh_element();
  std::optional<ElemId> find_element(const std::string& name) const;
  std::size_t element_count() const { return elem_names_.size(); }
  const std::string& element_name(ElemId x) const { return elem_names_.at(x); }
  const Term& element_term(ElemId x) const { return elem_terms_.at(x); }
  bool is_fresh_element(ElemId x) const { return fresh_flags_.at(x) != 0; }

  SetId set_var(const std::string& name);
  SetId singleton(ElemId x);
  SetId compose(Kind kind, SetId a, SetId b);
  /// Interns a flat-form term (nested composites are accepted too).
  SetId intern(const Term& term);
  std::optional<SetId> find(const Term& term) const;

  std::size_t size() const { return nodes_.size(); }
  const Node& node(SetId s) const { return nodes_.at(s); }
  bool is_composite(SetId s) const;
  const Term& term(SetId s) const { return terms_.at(s); }
  const Term& card_var(SetId s) const { return cards_.at(s); }
  std::string to_string(SetId s) const { return term(s).to_string(); }

 private:
  SetId add(Node node, Term term);

  std::vector<std::string> elem_names_;
  std::vector<Term> elem_terms_;
  std::vector<char> fresh_flags_;
  std::unordered_map<std::string, ElemId> elem_index_;
  FreshNames fresh_elems_{std::string(kFreshPrefix) + "y"};

  std::vector<Node> nodes_;
  std::vector<Term> terms_;
  std::vector<Term> cards_;
  std::map<std::tuple<Kind, std::uint32_t, std::uint32_t, std::string>, SetId> node_index_;
};

/// A literal of the S component.
struct SetLit {
  enum class Kind : std::uint8_t { Member, NotMember, Eq, Neq, CardOf };
  Kind kind;
  std::uint32_t a;  // element for Member/NotMember, set otherwise (unused for CardOf)
  std::uint32_t b;  // set

  static SetLit member(ElemId x, SetId s) { return {Kind::Member, x, s}; }
  static SetLit not_member(ElemId x, SetId s) { return {Kind::NotMember, x, s}; }
  static SetLit eq(SetId s, SetId t) { return {Kind::Eq, s, t}; }
  static SetLit neq(SetId s, SetId t) { return {Kind::Neq, s, t}; }
  static SetLit card_of(SetId s) { return {Kind::CardOf, 0, s}; }

  friend bool operator==(const SetLit&, const SetLit&) = default;
};

/// Membership bits for an (element class, set class) pair.
enum : std::uint8_t { kIn = 1, kOut = 2 };

/// Closure view of S modulo the element and set equalities; rebuilt on demand.
struct MembershipIndex {
  std::unordered_map<std::uint64_t, std::uint8_t> bits;
  /// Set root -> element roots with some literal on it, first-seen order.
  std::unordered_map<SetId, std::vector<ElemId>> by_set;
  /// Normalized pairs of set roots known to be distinct.
  std::set<std::pair<SetId, SetId>> neq_roots;
  std::optional<std::pair<ElemId, SetId>> conflict;

  static std::uint64_t key(ElemId e, SetId s) { return (std::uint64_t{e} << 32) | s; }
};

enum class RuleTag : std::uint8_t {
  UnionDown1,
  UnionDown2,
  UnionUp1,
  UnionUp2,
  InterDown1,
  InterDown2,
  InterUp1,
  InterUp2,
  UnionSplit,
  InterSplit,
  DiffDown1,
  DiffDown2,
  DiffDown3,
  DiffUp1,
  DiffUp2,
  DiffUp3,
  DiffSplit,
  Singleton,
  SingleMember,
  SingleNonMember,
  SetDisequality,
  EqUnsat,
  SetUnsat,
  EmptyUnsat,
  IntroduceEqRight,
  IntroduceEqLeft,
  IntroduceUnion,
  IntroduceInter,
  IntroduceDiff,
  IntroduceCard,
  IntroduceSingleton,
  IntroduceEmptySet,
  MergeEquality1,
  MergeEquality2,
  GuessEmptySet,
  ArithContradiction,
  MembersArrangement,
  PropagateMinsize,
  GuessLowerBound,
};

inline constexpr std::size_t kRuleTagCount = static_cast<std::size_t>(RuleTag::GuessLowerBound) + 1;

std::string_view to_string(RuleTag tag);
bool is_closing(RuleTag tag);
bool is_graph_rule(RuleTag tag);

struct Effect {
  enum class Kind : std::uint8_t { SetLiteral, ElemEq, ElemNeq, Atom, AddNode, Merge };
  Kind kind = Kind::SetLiteral;
  SetLit lit{SetLit::Kind::Member, 0, 0};
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  CardAtom atom{};

  static Effect set_literal(SetLit l) { return make(Kind::SetLiteral, l, 0, 0); }
  static Effect elem_eq(ElemId x, ElemId y) { return make(Kind::ElemEq, {}, x, y); }
  static Effect elem_neq(ElemId x, ElemId y) { return make(Kind::ElemNeq, {}, x, y); }
  static Effect card_atom(CardAtom a) {
    Effect e = make(Kind::Atom, {}, 0, 0);
    e.atom = std::move(a);
    return e;
  }
  static Effect add_node(SetId s) { return make(Kind::AddNode, {}, s, 0); }
  static Effect merge(SetId s, SetId t) { return make(Kind::Merge, {}, s, t); }

 private:
  static Effect make(Kind k, SetLit l, std::uint32_t a, std::uint32_t b) {
    Effect e;
    e.kind = k;
    e.lit = l;
    e.a = a;
    e.b = b;
    return e;
  }
};

struct RuleInstance {
  RuleTag tag;
  /// One entry per conclusion; empty for closing rules.
  std::vector<std::vector<Effect>> branches;

  bool branching() const { return branches.size() > 1; }
};

/// The tuple <S, M, A, G>. Every component is append-only or trailed, so a
/// checkpoint restores the exact earlier state.
class SolverState {
 public:
  struct Checkpoint {
    std::size_t lits = 0;
    std::size_t set_trail = 0;
    EqEngine::Mark eq;
    std::size_t atoms = 0;
    CardGraph::Mark graph;
    std::size_t terms = 0;
    std::size_t elems = 0;
  };

  explicit SolverState(std::shared_ptr<TermBank> bank);

  TermBank& bank() const { return *bank_; }

  // S
  const std::vector<SetLit>& lits() const { return lits_; }
  /// The guarded add: appends `lit` unless it is already in the closure.
  bool add_lit(const SetLit& lit);
  bool in_sstar(const SetLit& lit) const;
  SetId set_root(SetId s) const;
  bool sets_equal(SetId s, SetId t) const { return set_root(s) == set_root(t); }
  bool sets_distinct(SetId s, SetId t) const;
  bool known_empty(SetId s) const { return sets_equal(s, kEmptySet); }
  std::uint8_t membership(ElemId x, SetId s) const;
  const MembershipIndex& index() const;

  // M
  const EqEngine& eq() const { return eq_; }
  ElemId elem_root(ElemId x) const;
  bool add_elem_eq(ElemId x, ElemId y);
  bool add_elem_neq(ElemId x, ElemId y);

  // A
  const std::vector<CardAtom>& atoms() const { return atoms_; }
  bool add_atom(const CardAtom& atom);

  // G
  const CardGraph& graph() const { return graph_; }
  CardGraph& graph_mut();

  /// Set terms of S, including subterms, in first-occurrence order.
  const std::vector<SetId>& set_terms() const { return terms_; }
  bool in_set_terms(SetId s) const { return s < term_flags_.size() && term_flags_[s]; }
  /// Terms(S) followed by the vertices not in Terms(S).
  std::vector<SetId> relevant_terms() const;
  /// Element terms of S and M.
  const std::vector<ElemId>& elem_terms() const { return elems_; }
  bool in_elem_terms(ElemId x) const { return x < elem_flags_.size() && elem_flags_[x]; }

  Checkpoint checkpoint() const;
  void rollback(const Checkpoint& cp);
  /// Changes whenever any component changes, including through rollback.
  std::uint64_t version() const { return version_; }
  /// Changes whenever A, G or the set equalities of S change.
  std::uint64_t arith_version() const { return arith_version_; }

  std::string lit_to_string(const SetLit& lit) const;

 private:
  void touch();
  void register_term(SetId s);
  void register_elem(ElemId x);
  SetId find_set(SetId s) const;
  void union_sets(SetId s, SetId t);

  std::shared_ptr<TermBank> bank_;
  std::vector<SetLit> lits_;

  // Union-find over set ids, union by size, no compression.
  std::vector<SetId> set_parent_;
  std::vector<std::uint32_t> set_size_;
  std::vector<std::pair<SetId, SetId>> set_trail_;  // (absorbed root, new root)

  EqEngine eq_;
  std::vector<CardAtom> atoms_;
  CardGraph graph_;

  std::vector<SetId> terms_;
  std::vector<char> term_flags_;
  std::vector<ElemId> elems_;
  std::vector<char> elem_flags_;

  std::uint64_t version_ = 0;
  std::uint64_t arith_version_ = 0;
  mutable std::uint64_t index_version_ = std::numeric_limits<std::uint64_t>::max();
  mutable MembershipIndex index_;
};

/// Applies one conclusion. Returns true if the state changed.
bool apply_effects(SolverState& state, const std::vector<Effect>& effects);

}  // namespace setcard
