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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace setcard {

enum class Sort : std::uint8_t { Element, Set, Card };

std::string_view to_string(Sort sort);

/// Raised when an operator is applied to arguments of the wrong sort or arity.
class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operators of the signature. `Card` applied to a set term doubles as the
/// cardinality variable associated with that term.
enum class Op : std::uint8_t {
  Var,
  EmptySet,
  Singleton,
  Union,
  Inter,
  Diff,
  Card,
  Numeral,
  Plus,
  Mult,
};

std::string_view to_string(Op op);

/// Immutable, sorted syntax tree. Copies share structure; equality and
/// ordering are syntactic (no commutativity or associativity).
class Term {
 public:
  Term() = default;

  static Term var(std::string name, Sort sort);
  static Term element(std::string name) { return var(std::move(name), Sort::Element); }
  static Term set(std::string name) { return var(std::move(name), Sort::Set); }
  static Term card_var(std::string name) { return var(std::move(name), Sort::Card); }
  static Term empty_set();
  static Term numeral(std::int64_t value);

  /// Generic application; validates arity and argument sorts.
  static Term apply(Op op, std::vector<Term> args);

  static Term singleton(const Term& elem) { return apply(Op::Singleton, {elem}); }
  static Term set_union(const Term& a, const Term& b) { return apply(Op::Union, {a, b}); }
  static Term set_inter(const Term& a, const Term& b) { return apply(Op::Inter, {a, b}); }
  static Term set_diff(const Term& a, const Term& b) { return apply(Op::Diff, {a, b}); }
  static Term card(const Term& set) { return apply(Op::Card, {set}); }

  bool is_null() const { return node_ == nullptr; }
  Op op() const;
  Sort sort() const;
  const std::string& name() const;
  std::int64_t value() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args().at(i); }
  std::size_t hash() const;

  bool is_var() const { return op() == Op::Var; }
  bool is_set_var() const { return is_var() && sort() == Sort::Set; }
  bool is_element_var() const { return is_var() && sort() == Sort::Element; }
  /// A union, intersection or difference.
  bool is_composite() const;
  /// A user Card variable or `card(s)`.
  bool is_card_variable() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
  static int compare(const Term& a, const Term& b);

  /// SMT-LIB style rendering, e.g. `(union A (inter B C))`.
  std::string to_smtlib() const;
  /// Mathematical rendering used in diagnostics, e.g. `A ⊔ (B ⊓ C)`.
  std::string to_string() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Returns the sort of a well-formed term.
Sort sort_of(const Term& term);

/// The cardinality variable c_s associated with set term s. Represented as
/// the term `card(s)` itself: injective, stable, and disjoint from every
/// user-declared name.
Term card_var_of(const Term& set_term);

enum class Relation : std::uint8_t { Eq, Neq, Lt, Ge };

std::string_view to_string(Relation rel);

/// `sum(coeff * var) + constant`, kept sorted by variable with no zero
/// coefficients.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::int64_t constant) : constant_(constant) {}

  static LinearForm of(const Term& card_var, std::int64_t coeff = 1);

  void add(const Term& card_var, std::int64_t coeff);
  void add_constant(std::int64_t c) { constant_ += c; }
  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm operator-() const;
  LinearForm scaled(std::int64_t k) const;

  const std::vector<std::pair<std::int64_t, Term>>& terms() const { return terms_; }
  std::int64_t constant() const { return constant_; }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend bool operator<(const LinearForm& a, const LinearForm& b);

 private:
  std::vector<std::pair<std::int64_t, Term>> terms_;
  std::int64_t constant_ = 0;
};

/// `lhs REL 0`.
struct CardAtom {
  LinearForm lhs;
  Relation rel = Relation::Eq;

  /// c >= k.
  static CardAtom geq(const Term& card_var, std::int64_t k);
  /// a REL b.
  static CardAtom compare(const LinearForm& a, Relation rel, const LinearForm& b);

  friend bool operator==(const CardAtom&, const CardAtom&) = default;
  friend bool operator<(const CardAtom& a, const CardAtom& b);
  std::string to_string() const;
};

/// A set, element or cardinality constraint. `Subset`/`NotSubset` only occur
/// before normalization; `CardOf` pairs a cardinality variable with its set.
class Constraint {
 public:
  enum class Kind : std::uint8_t {
    SetEq,
    SetNeq,
    Member,
    NotMember,
    Subset,
    NotSubset,
    CardOf,
    ElemEq,
    ElemNeq,
    Arith,
  };

  static Constraint set_eq(Term s, Term t);
  static Constraint set_neq(Term s, Term t);
  static Constraint member(Term x, Term s);
  static Constraint not_member(Term x, Term s);
  static Constraint subset(Term s, Term t);
  static Constraint not_subset(Term s, Term t);
  /// c ≈ |s|; `c` must be `card_var_of(s)`.
  static Constraint card_of(Term c, Term s);
  static Constraint elem_eq(Term x, Term y);
  static Constraint elem_neq(Term x, Term y);
  static Constraint arith(CardAtom atom);

  Kind kind() const { return kind_; }
  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  const CardAtom& atom() const { return atom_; }

  bool is_set_constraint() const;
  bool is_element_constraint() const { return kind_ == Kind::ElemEq || kind_ == Kind::ElemNeq; }

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend bool operator<(const Constraint& a, const Constraint& b);
  std::string to_string() const;

 private:
  Constraint(Kind kind, Term lhs, Term rhs) : kind_(kind), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}
  Kind kind_ = Kind::SetEq;
  Term lhs_;
  Term rhs_;
  CardAtom atom_;
};

std::ostream& operator<<(std::ostream& os, const Constraint& c);

/// Variables occurring in a constraint: element and set variables, user Card
/// variables, and `card(s)` cardinality variables (which are not descended into).
std::set<Term> free_vars(const Constraint& constraint);
std::set<Term> free_vars(const std::vector<Constraint>& constraints);

/// Reserved prefix for generated names; the parser rejects it.
inline constexpr std::string_view kFreshPrefix = "__f";

/// Monotone fresh-name source.
class FreshNames {
 public:
  explicit FreshNames(std::string prefix = std::string(kFreshPrefix)) : prefix_(std::move(prefix)) {}
  std::string next() { return prefix_ + std::to_string(counter_++); }
  std::uint64_t issued() const { return counter_; }

 private:
  std::string prefix_;
  std::uint64_t counter_ = 0;
};

}  // namespace setcard

template <>
struct std::hash<setcard::Term> {
  std::size_t operator()(const setcard::Term& t) const { return t.hash(); }
};
