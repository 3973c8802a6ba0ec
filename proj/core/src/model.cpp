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

#include "setcard/model.hpp"

#include <algorithm>
#include <iterator>

namespace setcard {

std::size_t Model::universe_size() const {
  std::set<std::uint32_t> ids = padding;
  for (const auto& [n, v] : elements) ids.insert(v);
  for (const auto& [n, s] : sets) ids.insert(s.begin(), s.end());
  return ids.size();
}

namespace {

using IdSet = std::set<std::uint32_t>;

std::optional<std::uint32_t> element_value(const Term& x, const Model& model) {
  auto it = model.elements.find(x.name());
  if (it == model.elements.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> card_value(const Term& v, const Model& model) {
  if (v.op() == Op::Card) {
    auto s = evaluate_set(v.arg(0), model);
    if (!s) return std::nullopt;
    return static_cast<std::int64_t>(s->size());
  }
  auto it = model.cards.find(v);
  if (it == model.cards.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<IdSet> evaluate_set(const Term& term, const Model& model) {
  switch (term.op()) {
    case Op::Var: {
      auto it = model.sets.find(term.name());
      if (it == model.sets.end()) return std::nullopt;
      return it->second;
    }
    case Op::EmptySet: return IdSet{};
    case Op::Singleton: {
      auto x = element_value(term.arg(0), model);
      if (!x) return std::nullopt;
      return IdSet{*x};
    }
    case Op::Union:
    case Op::Inter:
    case Op::Diff: {
      auto a = evaluate_set(term.arg(0), model);
      auto b = evaluate_set(term.arg(1), model);
      if (!a || !b) return std::nullopt;
      IdSet out;
      auto ins = std::inserter(out, out.begin());
      if (term.op() == Op::Union) std::set_union(a->begin(), a->end(), b->begin(), b->end(), ins);
      if (term.op() == Op::Inter) std::set_intersection(a->begin(), a->end(), b->begin(), b->end(), ins);
      if (term.op() == Op::Diff) std::set_difference(a->begin(), a->end(), b->begin(), b->end(), ins);
      return out;
    }
    default: return std::nullopt;
  }
}

Validation validate_model(const std::vector<Constraint>& constraints, const Model& model) {
  using Kind = Constraint::Kind;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Constraint& c = constraints[i];
    auto fail = [&](std::string why) {
      return Validation{false, i, c.to_string() + ": " + why};
    };
    switch (c.kind()) {
      case Kind::SetEq:
      case Kind::SetNeq:
      case Kind::Subset:
      case Kind::NotSubset: {
        auto a = evaluate_set(c.lhs(), model);
        auto b = evaluate_set(c.rhs(), model);
        if (!a || !b) return fail("unassigned variable");
        bool value = false;
        if (c.kind() == Kind::SetEq || c.kind() == Kind::SetNeq) {
          value = *a == *b;
        } else {
          value = std::includes(b->begin(), b->end(), a->begin(), a->end());
        }
        const bool positive = c.kind() == Kind::SetEq || c.kind() == Kind::Subset;
        if (value != positive) return fail("false");
        break;
      }
      case Kind::Member:
      case Kind::NotMember: {
        auto x = element_value(c.lhs(), model);
        auto s = evaluate_set(c.rhs(), model);
        if (!x || !s) return fail("unassigned variable");
        if ((s->count(*x) != 0) != (c.kind() == Kind::Member)) return fail("false");
        break;
      }
      case Kind::CardOf: {
        auto s = evaluate_set(c.rhs(), model);
        if (!s) return fail("unassigned variable");
        auto it = model.cards.find(c.lhs());
        if (it != model.cards.end() && it->second != static_cast<std::int64_t>(s->size())) {
          return fail("cardinality " + std::to_string(it->second) + " but set has " +
                      std::to_string(s->size()) + " elements");
        }
        break;
      }
      case Kind::ElemEq:
      case Kind::ElemNeq: {
        auto x = element_value(c.lhs(), model);
        auto y = element_value(c.rhs(), model);
        if (!x || !y) return fail("unassigned variable");
        if ((*x == *y) != (c.kind() == Kind::ElemEq)) return fail("false");
        break;
      }
      case Kind::Arith: {
        std::map<Term, std::int64_t> values;
        for (const auto& [coeff, v] : c.atom().lhs.terms()) {
          auto val = card_value(v, model);
          if (!val) return fail("unassigned variable " + v.to_string());
          if (*val < 0) return fail("negative cardinality");
          values[v] = *val;
        }
        std::int64_t sum = c.atom().lhs.constant();
        for (const auto& [coeff, v] : c.atom().lhs.terms()) sum += coeff * values[v];
        bool ok = false;
        switch (c.atom().rel) {
          case Relation::Eq: ok = sum == 0; break;
          case Relation::Neq: ok = sum != 0; break;
          case Relation::Lt: ok = sum < 0; break;
          case Relation::Ge: ok = sum >= 0; break;
        }
        if (!ok) return fail("false");
        break;
      }
    }
  }
  return {};
}

}  // namespace setcard
