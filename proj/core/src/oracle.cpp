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

#include "setcard/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace setcard {

namespace {

constexpr std::uint32_t kMaxUniverse = 31;

// Variables are numbered by level: elements, then sets, then free
// cardinality variables.
class Enumerator {
 public:
  Enumerator(const std::vector<Constraint>& constraints, const OracleBound& bound)
      : constraints_(constraints), bound_(bound) {
    if (bound.max_universe > kMaxUniverse) throw std::invalid_argument("oracle universe bound too large");
    for (const auto& c : constraints) {
      if (c.kind() == Constraint::Kind::Arith) {
        for (const auto& [k, v] : c.atom().lhs.terms()) collect(v);
      } else {
        collect(c.lhs());
        collect(c.rhs());
      }
    }
    levels_ = elems_.size() + sets_.size() + cards_.size();
    schedule_.resize(levels_ + 1);
    for (std::size_t i = 0; i < constraints.size(); ++i) schedule_[level_of(constraints[i])].push_back(i);
    elem_val_.assign(elems_.size(), 0);
    set_val_.assign(sets_.size(), 0);
    card_val_.assign(cards_.size(), 0);
  }

  OracleResult run() {
    OracleResult result;
    for (std::uint32_t k = 0; k <= bound_.max_universe; ++k) {
      if (k == 0 && !elems_.empty()) continue;
      universe_ = k;
      if (search(0, 0)) {
        result.found = true;
        result.universe = k;
        result.model = build_model();
        return result;
      }
    }
    result.universe = bound_.max_universe;
    return result;
  }

 private:
  void collect(const Term& t) {
    if (t.is_null()) return;
    if (t.is_var()) {
      switch (t.sort()) {
        case Sort::Element:
          if (!elem_index_.count(t)) {
            elem_index_.emplace(t, elems_.size());
            elems_.push_back(t);
          }
          break;
        case Sort::Set:
          if (!set_index_.count(t)) {
            set_index_.emplace(t, sets_.size());
            sets_.push_back(t);
          }
          break;
        case Sort::Card:
          if (!card_index_.count(t)) {
            card_index_.emplace(t, cards_.size());
            cards_.push_back(t);
          }
          break;
      }
      return;
    }
    for (const auto& a : t.args()) collect(a);
  }

  std::size_t term_level(const Term& t) const {
    if (t.is_null()) return 0;
    if (t.is_var()) {
      switch (t.sort()) {
        case Sort::Element: return elem_index_.at(t) + 1;
        case Sort::Set: return elems_.size() + set_index_.at(t) + 1;
        case Sort::Card: return elems_.size() + sets_.size() + card_index_.at(t) + 1;
      }
    }
    std::size_t level = 0;
    for (const auto& a : t.args()) level = std::max(level, term_level(a));
    return level;
  }

  std::size_t level_of(const Constraint& c) const {
    if (c.kind() == Constraint::Kind::Arith) {
      std::size_t level = 0;
      for (const auto& [k, v] : c.atom().lhs.terms()) level = std::max(level, term_level(v));
      return level;
    }
    return std::max(term_level(c.lhs()), term_level(c.rhs()));
  }

  std::uint32_t eval_set(const Term& t) const {
    switch (t.op()) {
      case Op::Var: return set_val_[set_index_.at(t)];
      case Op::EmptySet: return 0;
      case Op::Singleton: return 1u << elem_val_[elem_index_.at(t.arg(0))];
      case Op::Union: return eval_set(t.arg(0)) | eval_set(t.arg(1));
      case Op::Inter: return eval_set(t.arg(0)) & eval_set(t.arg(1));
      case Op::Diff: return eval_set(t.arg(0)) & ~eval_set(t.arg(1));
      default: throw std::logic_error("not a set term");
    }
  }

  std::int64_t eval_card(const Term& t) const {
    if (t.op() == Op::Card) return std::popcount(eval_set(t.arg(0)));
    return card_val_[card_index_.at(t)];
  }

  bool holds(const Constraint& c) const {
    using Kind = Constraint::Kind;
    switch (c.kind()) {
      case Kind::SetEq: return eval_set(c.lhs()) == eval_set(c.rhs());
      case Kind::SetNeq: return eval_set(c.lhs()) != eval_set(c.rhs());
      case Kind::Subset: return (eval_set(c.lhs()) & ~eval_set(c.rhs())) == 0;
      case Kind::NotSubset: return (eval_set(c.lhs()) & ~eval_set(c.rhs())) != 0;
      case Kind::Member:
      case Kind::NotMember: {
        const bool in = (eval_set(c.rhs()) >> elem_val_[elem_index_.at(c.lhs())]) & 1u;
        return in == (c.kind() == Kind::Member);
      }
      case Kind::CardOf: return true;
      case Kind::ElemEq:
      case Kind::ElemNeq: {
        const bool eq = elem_val_[elem_index_.at(c.lhs())] == elem_val_[elem_index_.at(c.rhs())];
        return eq == (c.kind() == Kind::ElemEq);
      }
      case Kind::Arith: {
        std::int64_t v = c.atom().lhs.constant();
        for (const auto& [k, var] : c.atom().lhs.terms()) v += k * eval_card(var);
        switch (c.atom().rel) {
          case Relation::Eq: return v == 0;
          case Relation::Neq: return v != 0;
          case Relation::Lt: return v < 0;
          case Relation::Ge: return v >= 0;
        }
      }
    }
    return false;
  }

  bool level_ok(std::size_t level) const {
    for (std::size_t i : schedule_[level]) {
      if (!holds(constraints_[i])) return false;
    }
    return true;
  }

  // `level` variables are assigned; `next_elem` is the restricted-growth cap.
  bool search(std::size_t level, std::uint32_t next_elem) {
    if (!level_ok(level)) return false;
    if (level == levels_) return true;
    const std::size_t e = elems_.size();
    const std::size_t s = sets_.size();
    if (level < e) {
      const std::uint32_t cap = std::min(next_elem + 1, universe_);
      for (std::uint32_t v = 0; v < cap; ++v) {
        elem_val_[level] = v;
        if (search(level + 1, std::max(next_elem, v + 1))) return true;
      }
      return false;
    }
    if (level < e + s) {
      const std::uint64_t limit = std::uint64_t{1} << universe_;
      for (std::uint64_t mask = 0; mask < limit; ++mask) {
        set_val_[level - e] = static_cast<std::uint32_t>(mask);
        if (search(level + 1, next_elem)) return true;
      }
      return false;
    }
    const std::int64_t top = bound_.max_universe + bound_.card_slack;
    for (std::int64_t v = 0; v <= top; ++v) {
      card_val_[level - e - s] = v;
      if (search(level + 1, next_elem)) return true;
    }
    return false;
  }

  Model build_model() const {
    Model m;
    for (std::size_t i = 0; i < elems_.size(); ++i) m.elements[elems_[i].name()] = elem_val_[i];
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      auto& out = m.sets[sets_[i].name()];
      for (std::uint32_t b = 0; b < universe_; ++b) {
        if ((set_val_[i] >> b) & 1u) out.insert(b);
      }
    }
    for (std::size_t i = 0; i < cards_.size(); ++i) m.cards[cards_[i]] = card_val_[i];
    for (const auto& c : constraints_) {
      if (c.kind() == Constraint::Kind::CardOf) m.cards[c.lhs()] = eval_card(c.lhs());
      if (c.kind() == Constraint::Kind::Arith) {
        for (const auto& [k, v] : c.atom().lhs.terms()) {
          if (v.op() == Op::Card) m.cards[v] = eval_card(v);
        }
      }
    }
    std::uint32_t used = 0;
    for (auto v : elem_val_) used |= 1u << v;
    for (auto v : set_val_) used |= v;
    for (std::uint32_t b = 0; b < universe_; ++b) {
      if (!((used >> b) & 1u)) m.padding.insert(b);
    }
    return m;
  }

  const std::vector<Constraint>& constraints_;
  OracleBound bound_;
  std::vector<Term> elems_, sets_, cards_;
  std::map<Term, std::size_t> elem_index_, set_index_, card_index_;
  std::size_t levels_ = 0;
  std::vector<std::vector<std::size_t>> schedule_;
  std::uint32_t universe_ = 0;
  std::vector<std::uint32_t> elem_val_;
  std::vector<std::uint32_t> set_val_;
  std::vector<std::int64_t> card_val_;
};

}  // namespace

OracleResult enumerate(const std::vector<Constraint>& constraints, const OracleBound& bound) {
  return Enumerator(constraints, bound).run();
}

}  // namespace setcard
