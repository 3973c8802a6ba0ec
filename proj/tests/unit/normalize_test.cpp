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

#include "generators.hpp"
#include "setcard/model.hpp"
#include "setcard/normalize.hpp"
#include "setcard/oracle.hpp"

namespace setcard {
namespace {

const Term A = Term::set("A");
const Term B = Term::set("B");
const Term C = Term::set("C");
const Term D = Term::set("D");
const Term E = Term::set("E");
const Term x = Term::element("x");

Term fresh(int i) { return Term::set("__f" + std::to_string(i)); }

TEST(Flatten, NestedUnionIsPurified) {
  const auto p = flatten({Constraint::member(x, Term::set_union(A, Term::set_union(B, C)))});
  const std::vector<Constraint> want = {
      Constraint::set_eq(fresh(0), Term::set_union(B, C)),
      Constraint::set_eq(fresh(1), Term::set_union(A, fresh(0))),
      Constraint::member(x, fresh(1)),
  };
  EXPECT_EQ(p.set_constraints, want);
  EXPECT_EQ(p.def_map.at("__f0"), Term::set_union(B, C));
  EXPECT_FALSE(check_flat(p.all()));
}

TEST(Flatten, SubsetBecomesIntersectionEquality) {
  const auto p = flatten({Constraint::subset(A, B)});
  EXPECT_EQ(p.set_constraints, std::vector<Constraint>{Constraint::set_eq(A, Term::set_inter(A, B))});
  EXPECT_FALSE(check_flat(p.all()));
}

TEST(Flatten, SharedOperandIsRenamed) {
  const auto p = flatten({Constraint::set_eq(A, Term::set_inter(B, C)), Constraint::set_eq(D, Term::set_inter(B, E))});
  const std::vector<Constraint> want = {
      Constraint::set_eq(A, Term::set_inter(B, C)),
      Constraint::set_eq(D, Term::set_inter(fresh(0), E)),
      Constraint::set_eq(fresh(0), B),
  };
  EXPECT_EQ(p.set_constraints, want);
  EXPECT_FALSE(check_flat(p.all()));
  EXPECT_TRUE(check_flat({Constraint::set_eq(A, Term::set_inter(B, C)), Constraint::set_eq(D, Term::set_inter(B, E))}));
}

TEST(Flatten, CardinalityGetsCardOf) {
  LinearForm f = LinearForm::of(Term::card(Term::set_union(A, B)));
  const auto p = flatten({Constraint::arith(CardAtom::compare(f, Relation::Lt, LinearForm(3)))});
  ASSERT_EQ(p.card_atoms.size(), 1u);
  const Term c = p.card_atoms.front().lhs.terms().front().second;
  EXPECT_EQ(c, card_var_of(fresh(0)));
  EXPECT_NE(std::find(p.set_constraints.begin(), p.set_constraints.end(), Constraint::card_of(c, fresh(0))),
            p.set_constraints.end());
}

TEST(CheckFlat, RejectsNestedTerms) {
  const auto v = check_flat({Constraint::member(x, Term::set_union(A, B))});
  ASSERT_TRUE(v);
  EXPECT_EQ(v->index, 0u);
}

TEST(Properties, FlattenOutputIsFlat) {
  testing::Rng rng(11);
  for (int round = 0; round < 500; ++round) {
    const auto cs = testing::random_problem(rng);
    const auto p = flatten(cs);
    const auto v = check_flat(p.all());
    EXPECT_FALSE(v) << testing::describe(cs) << " :: " << (v ? v->reason : "");
  }
}

TEST(Properties, FlattenIsEquisatisfiable) {
  testing::Rng rng(13);
  testing::GenBounds small;
  small.set_vars = 3;
  small.set_constraints = 4;
  for (int round = 0; round < 150; ++round) {
    const auto cs = testing::random_problem(rng, small);
    const auto p = flatten(cs);
    const auto before = enumerate(cs, OracleBound{3, 2});
    const auto after = enumerate(p.all(), OracleBound{3, 2});
    EXPECT_EQ(before.found, after.found) << testing::describe(cs);
    // A model of the flat problem already assigns every input variable.
    if (after.found) EXPECT_TRUE(validate_model(cs, after.model).ok) << testing::describe(cs);
  }
}

}  // namespace
}  // namespace setcard
