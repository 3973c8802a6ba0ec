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

#include "setcard/setrules.hpp"

#include <algorithm>
#include <set>

namespace setcard {

namespace {

using K = TermBank::Kind;

Effect in(ElemId x, SetId s) { return Effect::set_literal(SetLit::member(x, s)); }
Effect out(ElemId x, SetId s) { return Effect::set_literal(SetLit::not_member(x, s)); }

class Finder {
 public:
  Finder(const SolverState& state, std::size_t limit) : st_(state), idx_(state.index()), limit_(limit) {}

  bool full() const { return limit_ != 0 && found_.size() >= limit_; }
  std::vector<RuleInstance> take() { return std::move(found_); }

  void closing() {
    if (st_.eq().inconsistent()) push(RuleTag::EqUnsat, {});
    if (full()) return;
    if (idx_.conflict) push(RuleTag::SetUnsat, {});
    if (full()) return;
    auto it = idx_.by_set.find(st_.set_root(kEmptySet));
    if (it != idx_.by_set.end()) {
      for (ElemId e : it->second) {
        if (bits(e, kEmptySet) & kIn) {
          push(RuleTag::EmptyUnsat, {});
          return;
        }
      }
    }
  }

  void propagations(const std::vector<SetId>& terms) {
    for (SetId u : terms) {
      if (full()) return;
      const auto& n = st_.bank().node(u);
      switch (n.kind) {
        case K::Union: for_elements(u, n.a, n.b, [&](ElemId x) { union_props(x, u, n.a, n.b); }); break;
        case K::Inter: for_elements(u, n.a, n.b, [&](ElemId x) { inter_props(x, u, n.a, n.b); }); break;
        case K::Diff: for_elements(u, n.a, n.b, [&](ElemId x) { diff_props(x, u, n.a, n.b); }); break;
        case K::Singleton: singleton_props(u, n.a); break;
        default: break;
      }
    }
  }

  void splits(const std::vector<SetId>& terms) {
    for (SetId u : terms) {
      if (full()) return;
      const auto& n = st_.bank().node(u);
      const SetId s = n.a;
      const SetId t = n.b;
      switch (n.kind) {
        case K::Union:
          for_elements(u, s, t, [&](ElemId x) {
            if ((bits(x, u) & kIn) && !(bits(x, s) & kIn) && !(bits(x, t) & kIn)) {
              push(RuleTag::UnionSplit, {{in(x, s)}, {in(x, t)}});
            }
          });
          break;
        case K::Inter:
          for_elements(u, s, t, [&](ElemId x) {
            if ((bits(x, s) & kIn) && bits(x, t) == 0) {
              push(RuleTag::InterSplit, {{in(x, t)}, {out(x, t)}});
            } else if ((bits(x, t) & kIn) && bits(x, s) == 0) {
              push(RuleTag::InterSplit, {{in(x, s)}, {out(x, s)}});
            }
          });
          break;
        case K::Diff:
          for_elements(u, s, t, [&](ElemId x) {
            if ((bits(x, s) & kIn) && bits(x, t) == 0) push(RuleTag::DiffSplit, {{in(x, t)}, {out(x, t)}});
          });
          break;
        default: break;
      }
    }
    if (full()) return;
    std::set<std::pair<SetId, SetId>> seen;
    for (const SetLit& l : st_.lits()) {
      if (full()) return;
      if (l.kind != SetLit::Kind::Neq) continue;
      const SetId a = st_.set_root(l.a);
      const SetId b = st_.set_root(l.b);
      if (!seen.emplace(std::min(a, b), std::max(a, b)).second) continue;
      if (lacks_witness(st_, l.a, l.b)) {
        push(RuleTag::SetDisequality,
             {{in(kWitness, l.a), out(kWitness, l.b)}, {out(kWitness, l.a), in(kWitness, l.b)}});
      }
    }
  }

 private:
  std::uint8_t bits(ElemId x, SetId s) const {
    auto it = idx_.bits.find(MembershipIndex::key(x, st_.set_root(s)));
    return it == idx_.bits.end() ? 0 : it->second;
  }

  // Visits the element roots with a literal on u, s or t, deduplicated.
  template <typename F>
  void for_elements(SetId u, SetId s, SetId t, F&& f) {
    std::vector<ElemId> xs;
    for (SetId v : {u, s, t}) {
      auto it = idx_.by_set.find(st_.set_root(v));
      if (it == idx_.by_set.end()) continue;
      for (ElemId e : it->second) {
        if (std::find(xs.begin(), xs.end(), e) == xs.end()) xs.push_back(e);
      }
    }
    for (ElemId x : xs) {
      if (full()) return;
      f(x);
    }
  }

  void push(RuleTag tag, std::vector<std::vector<Effect>> branches) {
    found_.push_back(RuleInstance{tag, std::move(branches)});
  }

  void union_props(ElemId x, SetId u, SetId s, SetId t) {
    const auto mu = bits(x, u), ms = bits(x, s), mt = bits(x, t);
    if ((mu & kOut) && (!(ms & kOut) || !(mt & kOut))) push(RuleTag::UnionDown1, {{out(x, s), out(x, t)}});
    if ((mu & kIn) && (ms & kOut) && !(mt & kIn)) push(RuleTag::UnionDown2, {{in(x, t)}});
    if ((mu & kIn) && (mt & kOut) && !(ms & kIn)) push(RuleTag::UnionDown2, {{in(x, s)}});
    if ((ms & kOut) && (mt & kOut) && !(mu & kOut)) push(RuleTag::UnionUp1, {{out(x, u)}});
    if (((ms | mt) & kIn) && !(mu & kIn)) push(RuleTag::UnionUp2, {{in(x, u)}});
  }

  void inter_props(ElemId x, SetId u, SetId s, SetId t) {
    const auto mu = bits(x, u), ms = bits(x, s), mt = bits(x, t);
    if ((mu & kIn) && (!(ms & kIn) || !(mt & kIn))) push(RuleTag::InterDown1, {{in(x, s), in(x, t)}});
    if ((mu & kOut) && (ms & kIn) && !(mt & kOut)) push(RuleTag::InterDown2, {{out(x, t)}});
    if ((mu & kOut) && (mt & kIn) && !(ms & kOut)) push(RuleTag::InterDown2, {{out(x, s)}});
    if ((ms & kIn) && (mt & kIn) && !(mu & kIn)) push(RuleTag::InterUp1, {{in(x, u)}});
    if (((ms | mt) & kOut) && !(mu & kOut)) push(RuleTag::InterUp2, {{out(x, u)}});
  }

  void diff_props(ElemId x, SetId u, SetId s, SetId t) {
    const auto mu = bits(x, u), ms = bits(x, s), mt = bits(x, t);
    if ((mu & kIn) && (!(ms & kIn) || !(mt & kOut))) push(RuleTag::DiffDown1, {{in(x, s), out(x, t)}});
    if ((mu & kOut) && (ms & kIn) && !(mt & kIn)) push(RuleTag::DiffDown2, {{in(x, t)}});
    if ((mu & kOut) && (mt & kOut) && !(ms & kOut)) push(RuleTag::DiffDown3, {{out(x, s)}});
    if ((ms & kIn) && (mt & kOut) && !(mu & kIn)) push(RuleTag::DiffUp1, {{in(x, u)}});
    if ((ms & kOut) && !(mu & kOut)) push(RuleTag::DiffUp2, {{out(x, u)}});
    if ((mt & kIn) && !(mu & kOut)) push(RuleTag::DiffUp3, {{out(x, u)}});
  }

  void singleton_props(SetId u, ElemId y) {
    const ElemId ry = st_.elem_root(y);
    if (!(bits(ry, u) & kIn)) push(RuleTag::Singleton, {{in(ry, u)}});
    auto it = idx_.by_set.find(st_.set_root(u));
    if (it == idx_.by_set.end()) return;
    for (ElemId x : it->second) {
      if (full()) return;
      const auto m = bits(x, u);
      if ((m & kIn) && !st_.eq().in_mstar_eq(x, ry)) push(RuleTag::SingleMember, {{Effect::elem_eq(x, ry)}});
      if ((m & kOut) && !st_.eq().in_mstar_neq(x, ry)) push(RuleTag::SingleNonMember, {{Effect::elem_neq(x, ry)}});
    }
  }

  const SolverState& st_;
  const MembershipIndex& idx_;
  std::size_t limit_;
  std::vector<RuleInstance> found_;
};

}  // namespace

bool lacks_witness(const SolverState& state, SetId s, SetId t) {
  const auto& idx = state.index();
  const SetId rs = state.set_root(s);
  const SetId rt = state.set_root(t);
  auto get = [&](ElemId x, SetId r) -> std::uint8_t {
    auto it = idx.bits.find(MembershipIndex::key(x, r));
    return it == idx.bits.end() ? 0 : it->second;
  };
  for (SetId r : {rs, rt}) {
    auto it = idx.by_set.find(r);
    if (it == idx.by_set.end()) continue;
    for (ElemId x : it->second) {
      const auto ms = get(x, rs);
      const auto mt = get(x, rt);
      if (((ms & kIn) && (mt & kOut)) || ((ms & kOut) && (mt & kIn))) return false;
    }
  }
  return true;
}

std::vector<RuleInstance> find_r1(const SolverState& state, R1Tier tier, std::size_t limit) {
  Finder f(state, limit);
  if (tier == R1Tier::All || tier == R1Tier::Closing) f.closing();
  if (tier == R1Tier::Closing || f.full()) return f.take();
  const std::vector<SetId> terms = state.relevant_terms();
  if (tier == R1Tier::All || tier == R1Tier::Propagation) f.propagations(terms);
  if (tier == R1Tier::Propagation || f.full()) return f.take();
  f.splits(terms);
  return f.take();
}

void bind_witness(RuleInstance& instance, TermBank& bank) {
  bool needed = false;
  for (const auto& branch : instance.branches) {
    for (const auto& e : branch) needed |= e.kind == Effect::Kind::SetLiteral && e.lit.a == kWitness;
  }
  if (!needed) return;
  const ElemId y = bank.fresh_element();
  for (auto& branch : instance.branches) {
    for (auto& e : branch) {
      if (e.kind == Effect::Kind::SetLiteral && e.lit.a == kWitness) e.lit.a = y;
    }
  }
}

Successors apply_r1(const SolverState& state, RuleInstance instance) {
  Successors out;
  if (is_closing(instance.tag)) {
    out.unsat = true;
    return out;
  }
  bind_witness(instance, state.bank());
  bool changed = false;
  for (const auto& branch : instance.branches) {
    SolverState next = state;
    changed |= apply_effects(next, branch);
    out.states.push_back(std::move(next));
  }
  if (!changed) throw StaleInstance(std::string(to_string(instance.tag)) + " instance no longer applies");
  return out;
}

}  // namespace setcard
