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

#include "setcard/ast.hpp"

#include <algorithm>
#include <sstream>

namespace setcard {

std::string_view to_string(Sort sort) {
  switch (sort) {
    case Sort::Element: return "Element";
    case Sort::Set: return "Set";
    case Sort::Card: return "Card";
  }
  return "?";
}

std::string_view to_string(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::EmptySet: return "emptyset";
    case Op::Singleton: return "singleton";
    case Op::Union: return "union";
    case Op::Inter: return "inter";
    case Op::Diff: return "setminus";
    case Op::Card: return "card";
    case Op::Numeral: return "numeral";
    case Op::Plus: return "+";
    case Op::Mult: return "*";
  }
  return "?";
}

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Neq: return "!=";
    case Relation::Lt: return "<";
    case Relation::Ge: return ">=";
  }
  return "?";
}

struct Term::Node {
  Op op;
  Sort sort;
  std::string name;
  std::int64_t value = 0;
  std::vector<Term> args;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

[[noreturn]] void sort_error(Op op, std::size_t index, const Term& arg, std::string_view expected) {
  std::ostringstream os;
  os << "ill-sorted application of '" << to_string(op) << "': argument " << index + 1;
  if (!arg.is_null()) {
    os << " '" << arg.to_smtlib() << "' has sort " << to_string(arg.sort());
  }
  os << ", expected " << expected;
  throw SortError(os.str());
}

}  // namespace

Term Term::var(std::string name, Sort sort) {
  if (name.empty()) throw SortError("variable with empty name");
  auto node = std::make_shared<Node>();
  node->op = Op::Var;
  node->sort = sort;
  node->hash = mix(mix(std::hash<std::string>{}(name), static_cast<std::size_t>(sort)), 1);
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::empty_set() {
  static const Term kEmpty = [] {
    auto node = std::make_shared<Node>();
    node->op = Op::EmptySet;
    node->sort = Sort::Set;
    node->hash = 0x51ed270b;
    return Term(std::move(node));
  }();
  return kEmpty;
}

Term Term::numeral(std::int64_t value) {
  auto node = std::make_shared<Node>();
  node->op = Op::Numeral;
  node->sort = Sort::Card;
  node->value = value;
  node->hash = mix(std::hash<std::int64_t>{}(value), 7);
  return Term(std::move(node));
}

Term Term::apply(Op op, std::vector<Term> args) {
  auto expect = [&](std::size_t i, Sort s) {
    if (args[i].is_null() || args[i].sort() != s) sort_error(op, i, args[i], setcard::to_string(s));
  };
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw SortError("operator '" + std::string(setcard::to_string(op)) + "' expects " + std::to_string(n) +
                      " argument(s), got " + std::to_string(args.size()));
    }
  };
  Sort result = Sort::Set;
  switch (op) {
    case Op::Var:
    case Op::EmptySet:
    case Op::Numeral:
      throw SortError("operator '" + std::string(setcard::to_string(op)) + "' is not applicable");
    case Op::Singleton:
      arity(1);
      // No Element terms besides variables.
      if (args[0].is_null() || !args[0].is_element_var()) sort_error(op, 0, args[0], "an Element variable");
      result = Sort::Set;
      break;
    case Op::Union:
    case Op::Inter:
    case Op::Diff:
      arity(2);
      expect(0, Sort::Set);
      expect(1, Sort::Set);
      result = Sort::Set;
      break;
    case Op::Card:
      arity(1);
      expect(0, Sort::Set);
      result = Sort::Card;
      break;
    case Op::Plus:
      if (args.size() < 2) throw SortError("operator '+' expects at least 2 arguments");
      for (std::size_t i = 0; i < args.size(); ++i) expect(i, Sort::Card);
      result = Sort::Card;
      break;
    case Op::Mult:
      arity(2);
      if (args[0].is_null() || args[0].op() != Op::Numeral) sort_error(op, 0, args[0], "a numeral");
      expect(1, Sort::Card);
      result = Sort::Card;
      break;
  }
  auto node = std::make_shared<Node>();
  node->op = op;
  node->sort = result;
  std::size_t h = mix(static_cast<std::size_t>(op) * 131, static_cast<std::size_t>(result));
  for (const auto& a : args) h = mix(h, a.hash());
  node->hash = h;
  node->args = std::move(args);
  return Term(std::move(node));
}

Op Term::op() const { return node_->op; }
Sort Term::sort() const { return node_->sort; }
const std::string& Term::name() const { return node_->name; }
std::int64_t Term::value() const { return node_->value; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

bool Term::is_composite() const {
  const Op o = op();
  return o == Op::Union || o == Op::Inter || o == Op::Diff;
}

bool Term::is_card_variable() const {
  return (op() == Op::Var && sort() == Sort::Card) || op() == Op::Card;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash) return false;
  return Term::compare(a, b) == 0;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.node_) return -1;
  if (!b.node_) return 1;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.op != y.op) return x.op < y.op ? -1 : 1;
  if (x.sort != y.sort) return x.sort < y.sort ? -1 : 1;
  if (int c = x.name.compare(y.name); c != 0) return c < 0 ? -1 : 1;
  if (x.value != y.value) return x.value < y.value ? -1 : 1;
  if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (int c = compare(x.args[i], y.args[i]); c != 0) return c;
  }
  return 0;
}

std::string Term::to_smtlib() const {
  if (!node_) return "<null>";
  switch (op()) {
    case Op::Var: return name();
    case Op::EmptySet: return "(as emptyset (Set Element))";
    case Op::Numeral:
      return value() < 0 ? "(- " + std::to_string(-value()) + ")" : std::to_string(value());
    default: break;
  }
  std::string out = "(";
  out += setcard::to_string(op());
  for (const auto& a : args()) {
    out += ' ';
    out += a.to_smtlib();
  }
  out += ')';
  return out;
}

std::string Term::to_string() const {
  if (!node_) return "<null>";
  auto wrap = [](const Term& t) {
    return t.is_composite() ? "(" + t.to_string() + ")" : t.to_string();
  };
  switch (op()) {
    case Op::Var: return name();
    case Op::EmptySet: return "∅";
    case Op::Singleton: return "{" + arg(0).to_string() + "}";
    case Op::Union: return wrap(arg(0)) + " ⊔ " + wrap(arg(1));
    case Op::Inter: return wrap(arg(0)) + " ⊓ " + wrap(arg(1));
    case Op::Diff: return wrap(arg(0)) + " ∖ " + wrap(arg(1));
    case Op::Card: return "card(" + arg(0).to_string() + ")";
    case Op::Numeral: return std::to_string(value());
    case Op::Plus: {
      std::string out;
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) out += " + ";
        out += arg(i).to_string();
      }
      return out;
    }
    case Op::Mult: return arg(0).to_string() + "·" + arg(1).to_string();
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }

Sort sort_of(const Term& term) {
  if (term.is_null()) throw SortError("null term");
  return term.sort();
}

Term card_var_of(const Term& set_term) { return Term::card(set_term); }

// ---------------------------------------------------------------------------

LinearForm LinearForm::of(const Term& card_var, std::int64_t coeff) {
  LinearForm f;
  f.add(card_var, coeff);
  return f;
}

void LinearForm::add(const Term& card_var, std::int64_t coeff) {
  if (!card_var.is_card_variable()) {
    throw SortError("linear form over non-cardinality variable '" + card_var.to_smtlib() + "'");
  }
  if (coeff == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), card_var,
                             [](const auto& entry, const Term& v) { return entry.second < v; });
  if (it != terms_.end() && it->second == card_var) {
    it->first += coeff;
    if (it->first == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {coeff, card_var});
  }
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  for (const auto& [c, v] : other.terms_) add(v, c);
  constant_ += other.constant_;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  for (const auto& [c, v] : other.terms_) add(v, -c);
  constant_ -= other.constant_;
  return *this;
}

LinearForm LinearForm::operator-() const { return scaled(-1); }

LinearForm LinearForm::scaled(std::int64_t k) const {
  LinearForm out;
  if (k == 0) return out;
  out.terms_ = terms_;
  for (auto& entry : out.terms_) entry.first *= k;
  out.constant_ = constant_ * k;
  return out;
}

bool operator<(const LinearForm& a, const LinearForm& b) {
  if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
  return a.terms_ < b.terms_;
}

CardAtom CardAtom::geq(const Term& card_var, std::int64_t k) {
  LinearForm f = LinearForm::of(card_var);
  f.add_constant(-k);
  return CardAtom{std::move(f), Relation::Ge};
}

CardAtom CardAtom::compare(const LinearForm& a, Relation rel, const LinearForm& b) {
  LinearForm f = a;
  f -= b;
  return CardAtom{std::move(f), rel};
}

bool operator<(const CardAtom& a, const CardAtom& b) {
  if (a.rel != b.rel) return a.rel < b.rel;
  return a.lhs < b.lhs;
}

std::string CardAtom::to_string() const {
  std::string out;
  bool first = true;
  for (const auto& [c, v] : lhs.terms()) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag) + "·";
    out += v.to_string();
    first = false;
  }
  // Render `sum + k REL 0` as `sum REL -k`.
  if (first) out = "0";
  out += " ";
  out += setcard::to_string(rel);
  out += " ";
  out += std::to_string(-lhs.constant());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_sort(const Term& t, Sort s, std::string_view what) {
  if (t.is_null() || t.sort() != s) {
    throw SortError(std::string(what) + ": expected a term of sort " + std::string(to_string(s)) +
                    (t.is_null() ? "" : ", got '" + t.to_smtlib() + "' of sort " + std::string(to_string(t.sort()))));
  }
}

void require_element_var(const Term& t, std::string_view what) {
  if (t.is_null() || !t.is_element_var()) {
    throw SortError(std::string(what) + ": expected an Element variable" +
                    (t.is_null() ? "" : ", got '" + t.to_smtlib() + "'"));
  }
}

}  // namespace

Constraint Constraint::set_eq(Term s, Term t) {
  require_sort(s, Sort::Set, "set equality");
  require_sort(t, Sort::Set, "set equality");
  return {Kind::SetEq, std::move(s), std::move(t)};
}

Constraint Constraint::set_neq(Term s, Term t) {
  require_sort(s, Sort::Set, "set disequality");
  require_sort(t, Sort::Set, "set disequality");
  return {Kind::SetNeq, std::move(s), std::move(t)};
}

Constraint Constraint::member(Term x, Term s) {
  require_element_var(x, "membership");
  require_sort(s, Sort::Set, "membership");
  return {Kind::Member, std::move(x), std::move(s)};
}

Constraint Constraint::not_member(Term x, Term s) {
  require_element_var(x, "non-membership");
  require_sort(s, Sort::Set, "non-membership");
  return {Kind::NotMember, std::move(x), std::move(s)};
}

Constraint Constraint::subset(Term s, Term t) {
  require_sort(s, Sort::Set, "subset");
  require_sort(t, Sort::Set, "subset");
  return {Kind::Subset, std::move(s), std::move(t)};
}

Constraint Constraint::not_subset(Term s, Term t) {
  require_sort(s, Sort::Set, "subset");
  require_sort(t, Sort::Set, "subset");
  return {Kind::NotSubset, std::move(s), std::move(t)};
}

Constraint Constraint::card_of(Term c, Term s) {
  require_sort(s, Sort::Set, "cardinality constraint");
  if (c.is_null() || c != card_var_of(s)) {
    throw SortError("cardinality constraint: variable must be card(" + s.to_smtlib() + ")");
  }
  return {Kind::CardOf, std::move(c), std::move(s)};
}

Constraint Constraint::elem_eq(Term x, Term y) {
  require_element_var(x, "element equality");
  require_element_var(y, "element equality");
  return {Kind::ElemEq, std::move(x), std::move(y)};
}

Constraint Constraint::elem_neq(Term x, Term y) {
  require_element_var(x, "element disequality");
  require_element_var(y, "element disequality");
  return {Kind::ElemNeq, std::move(x), std::move(y)};
}

Constraint Constraint::arith(CardAtom atom) {
  Constraint c{Kind::Arith, Term{}, Term{}};
  c.atom_ = std::move(atom);
  return c;
}

bool Constraint::is_set_constraint() const {
  switch (kind_) {
    case Kind::SetEq:
    case Kind::SetNeq:
    case Kind::Member:
    case Kind::NotMember:
    case Kind::Subset:
    case Kind::NotSubset:
    case Kind::CardOf: return true;
    default: return false;
  }
}

bool operator<(const Constraint& a, const Constraint& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (int c = Term::compare(a.lhs_, b.lhs_); c != 0) return c < 0;
  if (int c = Term::compare(a.rhs_, b.rhs_); c != 0) return c < 0;
  return a.atom_ < b.atom_;
}

std::string Constraint::to_string() const {
  switch (kind_) {
    case Kind::SetEq: return lhs_.to_string() + " ≈ " + rhs_.to_string();
    case Kind::SetNeq: return lhs_.to_string() + " ≉ " + rhs_.to_string();
    case Kind::Member: return lhs_.to_string() + " ∈ " + rhs_.to_string();
    case Kind::NotMember: return lhs_.to_string() + " ∉ " + rhs_.to_string();
    case Kind::Subset: return lhs_.to_string() + " ⊑ " + rhs_.to_string();
    case Kind::NotSubset: return lhs_.to_string() + " ⋢ " + rhs_.to_string();
    case Kind::CardOf: return lhs_.to_string() + " ≈ |" + rhs_.to_string() + "|";
    case Kind::ElemEq: return lhs_.to_string() + " ≈ " + rhs_.to_string();
    case Kind::ElemNeq: return lhs_.to_string() + " ≉ " + rhs_.to_string();
    case Kind::Arith: return atom_.to_string();
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Constraint& c) { return os << c.to_string(); }

namespace {

void collect_vars(const Term& t, std::set<Term>& out) {
  if (t.is_null()) return;
  if (t.is_var() || t.op() == Op::Card) {
    out.insert(t);
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::set<Term> free_vars(const Constraint& constraint) {
  std::set<Term> out;
  if (constraint.kind() == Constraint::Kind::Arith) {
    for (const auto& [c, v] : constraint.atom().lhs.terms()) out.insert(v);
    return out;
  }
  collect_vars(constraint.lhs(), out);
  collect_vars(constraint.rhs(), out);
  return out;
}

std::set<Term> free_vars(const std::vector<Constraint>& constraints) {
  std::set<Term> out;
  for (const auto& c : constraints) {
    auto vs = free_vars(c);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

}  // namespace setcard
