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

#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "setcard/frontend.hpp"
#include "setcard/model.hpp"
#include "setcard/normalize.hpp"
#include "setcard/oracle.hpp"

namespace setcard {
namespace {

std::vector<Constraint> load(const std::string& name) {
  std::ifstream in(std::string(SETCARD_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str()).assertions;
}

const Term S = Term::set("S");
const Term x = Term::element("x");
const Term y = Term::element("y");

TEST(Oracle, FindsSmallestModel) {
  const std::vector<Constraint> cs = {Constraint::member(x, S), Constraint::member(y, S), Constraint::elem_neq(x, y)};
  const auto r = enumerate(cs, OracleBound{4, 2});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.universe, 2u);
  EXPECT_TRUE(validate_model(cs, r.model).ok);
}

TEST(Oracle, CardinalityNeedsLargerUniverse) {
  LinearForm c = LinearForm::of(card_var_of(S));
  const std::vector<Constraint> cs = {Constraint::arith(CardAtom::compare(c, Relation::Ge, LinearForm(3))),
                                      Constraint::card_of(card_var_of(S), S)};
  const auto r = enumerate(cs, OracleBound{4, 2});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.model.sets.at("S").size(), 3u);
  EXPECT_FALSE(enumerate(cs, OracleBound{2, 2}).found);
}

TEST(Oracle, MembershipExampleIsSat) {
  const auto r = enumerate(load("membership.smt2"), OracleBound{4, 2});
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(validate_model(load("membership.smt2"), r.model).ok);
}

TEST(Oracle, MergedLeafExampleHasNoModelUpToSix) {
  EXPECT_FALSE(enumerate(load("merged_leaves.smt2"), OracleBound{6, 2}).found);
}

TEST(Oracle, RejectsHugeBounds) { EXPECT_THROW(enumerate({}, OracleBound{64, 0}), std::invalid_argument); }

TEST(Properties, FoundModelsValidate) {
  testing::Rng rng(37);
  for (int round = 0; round < 300; ++round) {
    const auto cs = testing::random_problem(rng);
    const auto r = enumerate(cs, OracleBound{3, 2});
    if (r.found) {
      const auto v = validate_model(cs, r.model);
      EXPECT_TRUE(v.ok) << testing::describe(cs) << " :: " << v.message;
      EXPECT_LE(r.universe, 3u);
    }
  }
}

TEST(Properties, LargerBoundsOnlyAddModels) {
  testing::Rng rng(41);
  for (int round = 0; round < 100; ++round) {
    const auto cs = testing::random_problem(rng);
    if (enumerate(cs, OracleBound{2, 2}).found) EXPECT_TRUE(enumerate(cs, OracleBound{3, 2}).found);
  }
}

}  // namespace
}  // namespace setcard
