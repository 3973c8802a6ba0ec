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

#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "setcard/engine.hpp"
#include "setcard/oracle.hpp"
#include "setcard/setrules.hpp"

namespace setcard {
namespace {

using K = TermBank::Kind;

struct Fixture {
  std::shared_ptr<TermBank> bank = std::make_shared<TermBank>();
  SolverState st{bank};

  SetId var(const std::string& n) { return bank->set_var(n); }
  ElemId el(const std::string& n) { return bank->element(n); }
};

std::vector<RuleTag> tags(const std::vector<RuleInstance>& v) {
  std::vector<RuleTag> out;
  for (const auto& i : v) out.push_back(i.tag);
  return out;
}

bool has_tag(const std::vector<RuleInstance>& v, RuleTag t) {
  return std::any_of(v.begin(), v.end(), [&](const RuleInstance& i) { return i.tag == t; });
}

// Applies non-branching instances until none remain.
void propagate(SolverState& st) {
  for (int guard = 0; guard < 1000; ++guard) {
    auto props = find_r1(st, R1Tier::Propagation, 1);
    if (props.empty()) return;
    st = apply_r1(st, props.front()).states.at(0);
  }
  FAIL() << "propagation did not stop";
}

TEST(SStar, MembershipFollowsElementEquality) {
  Fixture f;
  const SetId S = f.var("S");
  const ElemId x = f.el("x"), y = f.el("y");
  f.st.add_lit(SetLit::member(x, S));
  EXPECT_FALSE(in_sstar(f.st, SetLit::member(y, S)));
  f.st.add_elem_eq(x, y);
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(y, S)));
}

TEST(SStar, MembershipFollowsSetEquality) {
  Fixture f;
  const SetId S = f.var("S"), T = f.var("T");
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, S));
  f.st.add_lit(SetLit::eq(S, T));
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(x, T)));
  const std::size_t before = f.st.lits().size();
  EXPECT_FALSE(closed_add(f.st, SetLit::member(x, T)));
  EXPECT_EQ(f.st.lits().size(), before);
}

TEST(SStar, EqualityIsSymmetricAndDisequalityLifts) {
  Fixture f;
  const SetId S = f.var("S"), T = f.var("T"), U = f.var("U");
  f.st.add_lit(SetLit::eq(S, T));
  f.st.add_lit(SetLit::neq(T, U));
  EXPECT_TRUE(in_sstar(f.st, SetLit::eq(T, S)));
  EXPECT_TRUE(in_sstar(f.st, SetLit::neq(U, S)));
  EXPECT_FALSE(in_sstar(f.st, SetLit::eq(S, U)));
}

TEST(Rules, InterDownOne) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const SetId st = f.bank->compose(K::Inter, s, t);
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, st));
  const auto found = find_r1(f.st);
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found.front().tag, RuleTag::InterDown1);
  propagate(f.st);
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(x, s)));
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(x, t)));
}

TEST(Rules, UnionDownOne) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const SetId u = f.bank->compose(K::Union, s, t);
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::not_member(x, u));
  EXPECT_TRUE(has_tag(find_r1(f.st), RuleTag::UnionDown1));
  propagate(f.st);
  EXPECT_TRUE(in_sstar(f.st, SetLit::not_member(x, s)));
  EXPECT_TRUE(in_sstar(f.st, SetLit::not_member(x, t)));
}

TEST(Rules, UnionDownTwo) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const SetId u = f.bank->compose(K::Union, s, t);
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, u));
  f.st.add_lit(SetLit::not_member(x, s));
  EXPECT_EQ(find_r1(f.st).front().tag, RuleTag::UnionDown2);
  propagate(f.st);
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(x, t)));
}

TEST(Rules, DifferenceDownOne) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const SetId d = f.bank->compose(K::Diff, s, t);
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, d));
  propagate(f.st);
  EXPECT_TRUE(in_sstar(f.st, SetLit::member(x, s)));
  EXPECT_TRUE(in_sstar(f.st, SetLit::not_member(x, t)));
}

TEST(Rules, UnionSplitBranchesOnEitherSide) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const SetId u = f.bank->compose(K::Union, s, t);
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, u));
  const auto splits = find_r1(f.st, R1Tier::Split);
  ASSERT_EQ(tags(splits), std::vector<RuleTag>{RuleTag::UnionSplit});
  const auto succ = apply_r1(f.st, splits.front());
  ASSERT_EQ(succ.states.size(), 2u);
  EXPECT_TRUE(in_sstar(succ.states[0], SetLit::member(x, s)));
  EXPECT_TRUE(in_sstar(succ.states[1], SetLit::member(x, t)));
}

TEST(Rules, EmptyUnsat) {
  Fixture f;
  f.st.add_lit(SetLit::member(f.el("x"), kEmptySet));
  const auto found = find_r1(f.st);
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found.front().tag, RuleTag::EmptyUnsat);
  EXPECT_TRUE(apply_r1(f.st, found.front()).unsat);
}

TEST(Rules, SetUnsatModuloEqualities) {
  Fixture f;
  const SetId S = f.var("S"), T = f.var("T");
  const ElemId x = f.el("x"), y = f.el("y");
  f.st.add_lit(SetLit::member(x, S));
  f.st.add_lit(SetLit::not_member(y, T));
  EXPECT_TRUE(find_r1(f.st, R1Tier::Closing).empty());
  f.st.add_lit(SetLit::eq(S, T));
  f.st.add_elem_eq(x, y);
  EXPECT_EQ(tags(find_r1(f.st, R1Tier::Closing)), std::vector<RuleTag>{RuleTag::SetUnsat});
}

TEST(Rules, EqUnsat) {
  Fixture f;
  const ElemId x = f.el("x"), y = f.el("y");
  f.st.add_elem_neq(x, y);
  f.st.add_elem_eq(x, y);
  EXPECT_TRUE(has_tag(find_r1(f.st, R1Tier::Closing), RuleTag::EqUnsat));
}

TEST(Rules, SetDisequalityIntroducesOneWitness) {
  Fixture f;
  const SetId S = f.var("S"), T = f.var("T");
  f.st.add_lit(SetLit::neq(S, T));
  auto found = find_r1(f.st, R1Tier::Split);
  ASSERT_EQ(tags(found), std::vector<RuleTag>{RuleTag::SetDisequality});
  const std::size_t elems = f.bank->element_count();
  const auto succ = apply_r1(f.st, found.front());
  ASSERT_EQ(succ.states.size(), 2u);
  ASSERT_EQ(f.bank->element_count(), elems + 1);
  const ElemId y = static_cast<ElemId>(elems);
  EXPECT_TRUE(f.bank->is_fresh_element(y));
  EXPECT_TRUE(in_sstar(succ.states[0], SetLit::member(y, S)));
  EXPECT_TRUE(in_sstar(succ.states[0], SetLit::not_member(y, T)));
  EXPECT_TRUE(in_sstar(succ.states[1], SetLit::not_member(y, S)));
  EXPECT_TRUE(in_sstar(succ.states[1], SetLit::member(y, T)));
  EXPECT_FALSE(lacks_witness(succ.states[0], S, T));
  EXPECT_TRUE(find_r1(succ.states[0], R1Tier::Split).empty());
}

TEST(Rules, StaleInstanceIsRejected) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t");
  const ElemId x = f.el("x");
  f.st.add_lit(SetLit::member(x, f.bank->compose(K::Inter, s, t)));
  const auto inst = find_r1(f.st).front();
  const SolverState after = apply_r1(f.st, inst).states.at(0);
  EXPECT_THROW(apply_r1(after, inst), StaleInstance);
}

TEST(Rules, MembershipExampleSaturatesWithoutSplits) {
  Fixture f;
  const SetId S = f.var("S"), A = f.var("A"), B = f.var("B"), C = f.var("C"), D = f.var("D");
  const ElemId x = f.el("x"), y = f.el("y");
  f.st.add_lit(SetLit::eq(S, f.bank->compose(K::Union, A, B)));
  f.st.add_lit(SetLit::eq(S, f.bank->compose(K::Inter, C, D)));
  f.st.add_lit(SetLit::member(x, C));
  f.st.add_lit(SetLit::not_member(x, D));
  f.st.add_lit(SetLit::not_member(y, S));
  f.st.add_lit(SetLit::member(y, D));
  propagate(f.st);
  EXPECT_TRUE(find_r1(f.st).empty());
  for (const auto& lit : {SetLit::not_member(x, S), SetLit::not_member(x, A), SetLit::not_member(x, B),
                          SetLit::not_member(y, C), SetLit::not_member(y, A), SetLit::not_member(y, B)}) {
    EXPECT_TRUE(in_sstar(f.st, lit)) << f.st.lit_to_string(lit);
  }
}

TEST(Strategy, ClosersThenPropagationsThenSplits) {
  Fixture f;
  const SetId s = f.var("s"), t = f.var("t"), a = f.var("a"), b = f.var("b");
  const ElemId x = f.el("x"), y = f.el("y");
  f.st.add_lit(SetLit::member(y, f.bank->compose(K::Union, a, b)));
  f.st.add_lit(SetLit::member(x, f.bank->compose(K::Inter, s, t)));
  auto all = find_r1(f.st);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].tag, RuleTag::InterDown1);
  EXPECT_EQ(all[1].tag, RuleTag::UnionSplit);
  f.st.add_lit(SetLit::member(x, kEmptySet));
  EXPECT_EQ(find_r1(f.st).front().tag, RuleTag::EmptyUnsat);
}

// Evaluates an effect of an R1 branch in a model over the bank's names.
bool holds(const Effect& e, const TermBank& bank, const Model& m) {
  auto elem = [&](ElemId x) { return m.elements.at(bank.element_name(x)); };
  auto set = [&](SetId s) { return *evaluate_set(bank.term(s), m); };
  switch (e.kind) {
    case Effect::Kind::SetLiteral:
      switch (e.lit.kind) {
        case SetLit::Kind::Member: return set(e.lit.b).count(elem(e.lit.a)) != 0;
        case SetLit::Kind::NotMember: return set(e.lit.b).count(elem(e.lit.a)) == 0;
        case SetLit::Kind::Eq: return set(e.lit.a) == set(e.lit.b);
        case SetLit::Kind::Neq: return set(e.lit.a) != set(e.lit.b);
        case SetLit::Kind::CardOf: return true;
      }
      return false;
    case Effect::Kind::ElemEq: return elem(e.a) == elem(e.b);
    case Effect::Kind::ElemNeq: return elem(e.a) != elem(e.b);
    default: return true;
  }
}

TEST(Properties, RulesPreserveAModel) {
  testing::Rng rng(41);
  testing::GenBounds bounds;
  bounds.card_atoms = 0;
  int walks = 0;
  for (int round = 0; round < 400; ++round) {
    const FlatProblem flat = flatten(testing::random_problem(rng, bounds));
    const auto oracle = enumerate(flat.all(), OracleBound{3, 0});
    if (!oracle.found) continue;
    ++walks;
    Model m = oracle.model;
    auto bank = std::make_shared<TermBank>();
    SolverState st = initial_state(flat, bank);
    for (int step = 0; step < 400; ++step) {
      auto found = find_r1(st);
      if (found.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
      RuleInstance inst = found[pick(rng)];
      ASSERT_FALSE(inst.branches.empty()) << to_string(inst.tag) << " closed a satisfiable branch\n"
                                          << testing::describe(flat.all());
      bind_witness(inst, *bank);
      if (inst.tag == RuleTag::SetDisequality) {
        const Effect& e = inst.branches[0][0];
        const auto l = *evaluate_set(bank->term(e.lit.b), m);
        const auto r = *evaluate_set(bank->term(inst.branches[1][1].lit.b), m);
        std::vector<std::uint32_t> diff;
        std::set_symmetric_difference(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(diff));
        ASSERT_FALSE(diff.empty());
        m.elements[bank->element_name(e.lit.a)] = diff.front();
      }
      std::vector<std::size_t> ok;
      for (std::size_t b = 0; b < inst.branches.size(); ++b) {
        if (std::all_of(inst.branches[b].begin(), inst.branches[b].end(),
                        [&](const Effect& e) { return holds(e, *bank, m); })) {
          ok.push_back(b);
        }
      }
      ASSERT_FALSE(ok.empty()) << to_string(inst.tag) << " has no branch true in the model\n"
                               << testing::describe(flat.all());
      const auto succ = apply_r1(st, inst);
      st = succ.states.at(ok.front());
    }
  }
  EXPECT_GT(walks, 50);
}

}  // namespace
}  // namespace setcard
