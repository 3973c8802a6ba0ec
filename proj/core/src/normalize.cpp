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

#include "setcard/normalize.hpp"

#include <set>

namespace setcard {

std::vector<Constraint> FlatProblem::all() const {
  std::vector<Constraint> out = set_constraints;
  out.insert(out.end(), elem_constraints.begin(), elem_constraints.end());
  for (const auto& a : card_atoms) out.push_back(Constraint::arith(a));
  return out;
}

namespace {

using Kind = Constraint::Kind;

class Flattener {
 public:
  explicit Flattener(std::string prefix) : fresh_(std::move(prefix)) {}

  FlatProblem run(const std::vector<Constraint>& input) {
    for (const auto& c : input) visit(c);
    rename_shared_operands();
    return std::move(out_);
  }

 private:
  void visit(const Constraint& c) {
    switch (c.kind()) {
      case Kind::SetEq: set_eq(c.lhs(), c.rhs()); break;
      case Kind::SetNeq: emit(Constraint::set_neq(purify(c.lhs()), purify(c.rhs()))); break;
      case Kind::Member: emit(Constraint::member(c.lhs(), purify(c.rhs()))); break;
      case Kind::NotMember: emit(Constraint::not_member(c.lhs(), purify(c.rhs()))); break;
      case Kind::Subset: set_eq(c.lhs(), Term::set_inter(c.lhs(), c.rhs())); break;
      case Kind::NotSubset:
        emit(Constraint::set_neq(purify(c.lhs()), purify(Term::set_inter(c.lhs(), c.rhs()))));
        break;
      case Kind::CardOf: card_term(c.rhs()); break;
      case Kind::ElemEq:
      case Kind::ElemNeq: out_.elem_constraints.push_back(c); break;
      case Kind::Arith: {
        const CardAtom& atom = c.atom();
        LinearForm lhs(atom.lhs.constant());
        for (const auto& [coeff, v] : atom.lhs.terms()) {
          lhs.add(v.op() == Op::Card ? card_term(v.arg(0)) : v, coeff);
        }
        out_.card_atoms.push_back(CardAtom{std::move(lhs), atom.rel});
        break;
      }
    }
  }

  void emit(Constraint c) { out_.set_constraints.push_back(std::move(c)); }

  Term card_term(const Term& s) {
    const Term v = purify(s);
    const Term c = card_var_of(v);
    if (carded_.insert(v).second) emit(Constraint::card_of(c, v));
    return c;
  }

  // Right-hand side with variable operands.
  Term shallow(const Term& t) {
    if (!t.is_composite()) return t;
    const Term a = purify(t.arg(0));
    const Term b = purify(t.arg(1));
    return Term::apply(t.op(), {a, b});
  }

  Term purify(const Term& t) {
    if (t.is_set_var()) return t;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    const Term rhs = shallow(t);
    const Term v = Term::set(fresh_.next());
    emit(Constraint::set_eq(v, rhs));
    memo_.emplace(t, v);
    out_.def_map.emplace(v.name(), t);
    return v;
  }

  void set_eq(Term a, Term b) {
    if (!a.is_set_var() && b.is_set_var()) std::swap(a, b);
    if (!a.is_set_var()) a = purify(a);
    if (b.is_set_var()) {
      emit(Constraint::set_eq(a, b));
      return;
    }
    if (auto it = memo_.find(b); it != memo_.end()) {
      emit(Constraint::set_eq(a, it->second));
      return;
    }
    emit(Constraint::set_eq(a, shallow(b)));
    memo_.emplace(b, a);
  }

  void rename_shared_operands() {
    std::set<Term> used;
    std::vector<Constraint> renamed;
    renamed.reserve(out_.set_constraints.size());
    for (const auto& c : out_.set_constraints) {
      if (c.kind() != Kind::SetEq || !c.rhs().is_composite()) {
        renamed.push_back(c);
        continue;
      }
      std::vector<Term> args = c.rhs().args();
      std::vector<Constraint> extra;
      for (auto& arg : args) {
        if (used.count(arg)) {
          const Term fresh = Term::set(fresh_.next());
          extra.push_back(Constraint::set_eq(fresh, arg));
          out_.def_map.emplace(fresh.name(), arg);
          arg = fresh;
        }
        used.insert(arg);
      }
      renamed.push_back(Constraint::set_eq(c.lhs(), Term::apply(c.rhs().op(), args)));
      renamed.insert(renamed.end(), extra.begin(), extra.end());
    }
    out_.set_constraints = std::move(renamed);
  }

  FreshNames fresh_;
  std::map<Term, Term> memo_;
  std::set<Term> carded_;
  FlatProblem out_;
};

}  // namespace

FlatProblem flatten(const std::vector<Constraint>& constraints, std::string prefix) {
  return Flattener(std::move(prefix)).run(constraints);
}

std::optional<FlatViolation> check_flat(const std::vector<Constraint>& constraints) {
  std::set<Term> operands;
  std::set<Term> carded;
  for (const auto& c : constraints) {
    if (c.kind() == Kind::CardOf) carded.insert(c.lhs());
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Constraint& c = constraints[i];
    auto fail = [&](std::string why) { return FlatViolation{i, c.to_string() + ": " + why}; };
    switch (c.kind()) {
      case Kind::SetEq: {
        if (!c.lhs().is_set_var()) return fail("left side is not a set variable");
        const Term& r = c.rhs();
        if (r.is_set_var() || r.op() == Op::EmptySet || r.op() == Op::Singleton) break;
        if (!r.arg(0).is_set_var() || !r.arg(1).is_set_var()) return fail("operand is not a set variable");
        for (const auto& arg : r.args()) {
          if (!operands.insert(arg).second) {
            return fail("variable " + arg.name() + " occurs in more than one composite term");
          }
        }
        break;
      }
      case Kind::SetNeq:
        if (!c.lhs().is_set_var() || !c.rhs().is_set_var()) return fail("disequality between non-variables");
        break;
      case Kind::Member:
      case Kind::NotMember:
        if (!c.rhs().is_set_var()) return fail("membership in a non-variable");
        break;
      case Kind::Subset:
      case Kind::NotSubset: return fail("subset constraint");
      case Kind::CardOf:
        if (!c.rhs().is_set_var()) return fail("cardinality of a non-variable");
        break;
      case Kind::ElemEq:
      case Kind::ElemNeq: break;
      case Kind::Arith:
        for (const auto& [coeff, v] : c.atom().lhs.terms()) {
          if (v.op() != Op::Card) continue;
          if (!v.arg(0).is_set_var()) return fail("cardinality of a non-variable");
          if (!carded.count(v)) return fail("missing cardinality constraint for " + v.to_string());
        }
        break;
    }
  }
  return std::nullopt;
}

}  // namespace setcard
