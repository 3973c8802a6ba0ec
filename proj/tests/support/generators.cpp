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

#include "generators.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "setcard/frontend.hpp"

namespace setcard::testing {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct Gen {
  Rng& rng;
  const GenBounds& b;
  int sets;
  int elems;

  Term elem() { return Term::element("x" + std::to_string(pick(rng, 0, elems - 1))); }
  Term var() { return Term::set("S" + std::to_string(pick(rng, 0, sets - 1))); }

  Term leaf() {
    const int r = pick(rng, 0, 19);
    if (r == 0) return Term::empty_set();
    if (r <= 2) return Term::singleton(elem());
    return var();
  }

  Term set_term() {
    if (!coin(rng, b.composite_rate)) return leaf();
    const Term a = leaf();
    const Term c = leaf();
    switch (pick(rng, 0, 2)) {
      case 0: return Term::set_union(a, c);
      case 1: return Term::set_inter(a, c);
      default: return Term::set_diff(a, c);
    }
  }

  Constraint set_constraint() {
    switch (pick(rng, 0, 9)) {
      case 0:
      case 1:
      case 2: return Constraint::set_eq(var(), set_term());
      case 3: return Constraint::set_neq(set_term(), set_term());
      case 4:
      case 5: return Constraint::member(elem(), set_term());
      case 6:
      case 7: return Constraint::not_member(elem(), set_term());
      case 8: return Constraint::subset(set_term(), set_term());
      default: return Constraint::set_eq(set_term(), set_term());
    }
  }

  CardAtom card_atom() {
    static constexpr std::int64_t kCoeffs[] = {-2, -1, -1, 1, 1, 1, 2};
    LinearForm f;
    const int n = pick(rng, 1, 2);
    for (int i = 0; i < n; ++i) {
      const std::int64_t k = kCoeffs[pick(rng, 0, 6)];
      if (coin(rng, 0.15)) {
        f.add(Term::card_var("k"), k);
      } else {
        f.add(Term::card(set_term()), k);
      }
    }
    f.add_constant(std::uniform_int_distribution<std::int64_t>(-b.max_constant, b.max_constant)(rng));
    static constexpr Relation kRels[] = {Relation::Eq, Relation::Neq, Relation::Lt, Relation::Ge};
    return CardAtom{f, kRels[pick(rng, 0, 3)]};
  }
};

}  // namespace

std::vector<Constraint> random_problem(Rng& rng, const GenBounds& bounds) {
  Gen g{rng, bounds, pick(rng, 1, bounds.set_vars), pick(rng, 1, bounds.elem_vars)};
  std::vector<Constraint> out;
  const int ns = pick(rng, 1, bounds.set_constraints);
  for (int i = 0; i < ns; ++i) out.push_back(g.set_constraint());
  const int ne = pick(rng, 0, bounds.elem_constraints);
  for (int i = 0; i < ne; ++i) {
    out.push_back(coin(rng, 0.5) ? Constraint::elem_eq(g.elem(), g.elem()) : Constraint::elem_neq(g.elem(), g.elem()));
  }
  const int na = pick(rng, 0, bounds.card_atoms);
  for (int i = 0; i < na; ++i) {
    CardAtom a = g.card_atom();
    if (a.lhs.terms().empty()) continue;
    out.push_back(Constraint::arith(a));
  }
  return out;
}

Term rename(const Term& t, const std::map<std::string, std::string>& names) {
  switch (t.op()) {
    case Op::Var: {
      auto it = names.find(t.name());
      return it == names.end() ? t : Term::var(it->second, t.sort());
    }
    case Op::EmptySet:
    case Op::Numeral: return t;
    default: break;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename(a, names));
  return Term::apply(t.op(), std::move(args));
}

Constraint rename(const Constraint& c, const std::map<std::string, std::string>& names) {
  using K = Constraint::Kind;
  auto r = [&](const Term& t) { return rename(t, names); };
  switch (c.kind()) {
    case K::SetEq: return Constraint::set_eq(r(c.lhs()), r(c.rhs()));
    case K::SetNeq: return Constraint::set_neq(r(c.lhs()), r(c.rhs()));
    case K::Member: return Constraint::member(r(c.lhs()), r(c.rhs()));
    case K::NotMember: return Constraint::not_member(r(c.lhs()), r(c.rhs()));
    case K::Subset: return Constraint::subset(r(c.lhs()), r(c.rhs()));
    case K::NotSubset: return Constraint::not_subset(r(c.lhs()), r(c.rhs()));
    case K::CardOf: return Constraint::card_of(r(c.lhs()), r(c.rhs()));
    case K::ElemEq: return Constraint::elem_eq(r(c.lhs()), r(c.rhs()));
    case K::ElemNeq: return Constraint::elem_neq(r(c.lhs()), r(c.rhs()));
    case K::Arith: {
      LinearForm f(c.atom().lhs.constant());
      for (const auto& [k, v] : c.atom().lhs.terms()) f.add(r(v), k);
      return Constraint::arith(CardAtom{f, c.atom().rel});
    }
  }
  return c;
}

std::map<std::string, std::string> random_renaming(const std::vector<Constraint>& cs, Rng& rng) {
  std::vector<std::string> names;
  std::set<Term> seen;
  for (const auto& v : free_vars(cs)) {
    if (v.is_var()) names.push_back(v.name());
  }
  for (const auto& c : cs) {
    if (c.kind() != Constraint::Kind::Arith) continue;
    for (const auto& [k, v] : c.atom().lhs.terms()) {
      if (v.op() != Op::Card) continue;
      for (const auto& w : free_vars(Constraint::set_eq(v.arg(0), v.arg(0)))) names.push_back(w.name());
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<int> ids(names.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = "v" + std::to_string(ids[i]) + "_" + names[i].substr(0, 1);
  return out;
}

std::string to_script(const std::vector<Constraint>& cs) {
  Script s;
  std::set<std::string> declared;
  auto declare = [&](const Term& v) {
    if (v.is_var() && declared.insert(v.name()).second) s.declarations.emplace_back(v.name(), v.sort());
  };
  for (const auto& c : cs) {
    for (const auto& v : free_vars(c)) {
      if (v.op() == Op::Card) {
        for (const auto& w : free_vars(Constraint::set_eq(v.arg(0), v.arg(0)))) declare(w);
      } else {
        declare(v);
      }
    }
  }
  s.assertions = cs;
  s.check_sat = true;
  return print_script(s);
}

std::string describe(const std::vector<Constraint>& cs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i].to_string();
  return os.str();
}

}  // namespace setcard::testing
