#include <gtest/gtest.h>

#include "nact/enumerator.hpp"
#include "nact/stratifier.hpp"
#include "nact/syntax.hpp"

using namespace nact;

TEST(Stratifier, SelfMembershipIsUnstratifiable) {
  const StratifyResult r = stratify(parse_formula("x in x"));
  EXPECT_FALSE(r.stratified);
  ASSERT_FALSE(r.cycle.empty());
  int sum = 0;
  for (const TypeConstraint& c : r.cycle) sum += c.diff;
  EXPECT_NE(sum, 0);
}

TEST(Stratifier, ChainsGetIncreasingTypes) {
  const StratifyResult r = stratify(parse_formula("forall x1: forall x2: x in x1 and x1 in x2"));
  ASSERT_TRUE(r.stratified);
  EXPECT_TRUE(satisfies(r, r.types));
  std::vector<int> wrong = r.types;
  wrong[0] += 5;
  EXPECT_FALSE(satisfies(r, wrong));
}

TEST(Stratifier, BindersAreRenamedApart) {
  // the two x1 binders are distinct nodes, so this is fine
  EXPECT_TRUE(is_stratified(parse_formula("(forall x1: x in x1) and (forall x1: x1 in x)")));
  EXPECT_FALSE(is_stratified(parse_formula("forall x1: x in x1 and x1 in x")));
}

TEST(Stratifier, AbstractionsAndEquality) {
  EXPECT_TRUE(is_stratified(parse_formula("x = {x1: x1 in x}")));
  EXPECT_FALSE(is_stratified(parse_formula("x = {x1: x in x1}")));
  EXPECT_TRUE(is_stratified(parse_formula("x in {x1: x1 = x1}")));
  // Russell's class is not stratified, the universe is
  EXPECT_FALSE(is_stratified(parse_formula("x in $Ru")));
  EXPECT_TRUE(is_stratified(parse_formula("x in $V")));
  EXPECT_TRUE(is_stratified(parse_formula("set(x) and slim(x)")));
}

TEST(Stratifier, NegationClosure) {
  for (const Formula& f : enumerate(400)) {
    ASSERT_EQ(is_stratified(f), is_stratified(Formula::negate(f))) << to_string(f);
  }
}
