#include <gtest/gtest.h>

#include "nact/library.hpp"
#include "nact/prover.hpp"
#include "nact/syntax.hpp"
#include "nact/trace_check.hpp"

using namespace nact;
using F = Formula;

namespace {
ProofBudget steps(std::size_t n) {
  ProofBudget b;
  b.max_steps = n;
  return b;
}
}  // namespace

TEST(Prover, Tautology) {
  const ProofResult r = prove({}, F::verum(), steps(100));
  EXPECT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(check_trace({}, F::verum(), r.trace).ok);
}

TEST(Prover, RussellClassIsNoSet) {
  const ProofResult r = refute_sethood(parse_formula("not x in x"), steps(1000));
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_LE(r.steps_used, 20u);
}

TEST(Prover, RefutedGoalsCarryTheNegation) {
  for (const char* text : {"set($Ru)", "$Ru in $Ru"}) {
    const ProofResult r = prove({}, parse_formula(text), steps(2000));
    EXPECT_EQ(r.status, ProofStatus::Refuted) << text;
    ASSERT_TRUE(r.proved);
    EXPECT_EQ(*r.proved, F::negate(parse_formula(text)));
    EXPECT_TRUE(check_trace({}, *r.proved, r.trace).ok) << text;
  }
}

TEST(Prover, InstantiatesWithPoolTerms) {
  const std::vector<F> ax{parse_formula("forall x: x in $Ru implies x in $V"),
                          parse_formula("set($0)"), parse_formula("$0 in $Ru")};
  const ProofResult r = prove(ax, parse_formula("$0 in $V"), steps(500));
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(check_trace(ax, parse_formula("$0 in $V"), r.trace).ok);
}

TEST(Prover, Deterministic) {
  const std::vector<F> ax{F::set(lib::singletons_prime())};
  const ProofResult a = prove(ax, F::falsum(), steps(5000));
  const ProofResult b = prove(ax, F::falsum(), steps(5000));
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.steps_used, b.steps_used);
  EXPECT_EQ(trace_to_text(a.trace), trace_to_text(b.trace));
}

TEST(Prover, BudgetMonotone) {
  const std::vector<F> ax{F::set(lib::singletons_prime())};
  const ProofResult full = prove(ax, F::falsum(), steps(50000));
  ASSERT_EQ(full.status, ProofStatus::Proved);
  EXPECT_EQ(counted_steps(full.trace), full.steps_used);
  const ProofResult tight = prove(ax, F::falsum(), steps(full.steps_used));
  EXPECT_EQ(tight.status, ProofStatus::Proved);
  EXPECT_EQ(tight.steps_used, full.steps_used);
  const ProofResult short_ = prove(ax, F::falsum(), steps(full.steps_used - 1));
  EXPECT_EQ(short_.status, ProofStatus::OutOfBudget);
  EXPECT_LE(short_.steps_used, full.steps_used - 1);
}

TEST(Prover, OutOfBudgetOnOpenQuestion) {
  const ProofResult r = prove({}, parse_formula("set($Omega)"), steps(300));
  EXPECT_EQ(r.status, ProofStatus::OutOfBudget);
  EXPECT_FALSE(r.proved);
}

TEST(TraceCheck, AcceptsAndRejects) {
  const std::vector<F> ax{F::set(lib::singletons_prime())};
  const ProofResult r = prove(ax, F::falsum(), steps(50000));
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(check_trace(ax, F::falsum(), r.trace).ok);

  // drop the last step: a branch stays open
  auto cut = r.trace;
  cut.pop_back();
  EXPECT_FALSE(check_trace(ax, F::falsum(), cut).ok);

  // claim a conclusion that does not follow
  auto forged = r.trace;
  for (TraceStep& s : forged) {
    if (s.rule == Rule::AndElim) {
      s.conclusions[0] = F::falsum();
      break;
    }
  }
  EXPECT_FALSE(check_trace(ax, F::falsum(), forged).ok);

  // the same trace does not prove falsum without the axiom
  EXPECT_FALSE(check_trace({}, F::falsum(), r.trace).ok);
}

TEST(TraceCheck, RuleNamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(Rule::Close); ++i) {
    const Rule r = static_cast<Rule>(i);
    EXPECT_EQ(rule_from_name(rule_name(r)), r);
  }
}
