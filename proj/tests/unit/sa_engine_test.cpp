#include <gtest/gtest.h>

#include "nact/enumerator.hpp"
#include "nact/sa_engine.hpp"
#include "nact/syntax.hpp"

using namespace nact;

namespace {
ProofBudget steps(std::size_t n) {
  ProofBudget b;
  b.max_steps = n;
  return b;
}
VerdictKind verdict(const char* body, const char* system, std::size_t n) {
  return classify_sa(parse_formula(body), *preset(system), steps(n)).kind;
}
}  // namespace

TEST(SaEngine, LibraryBodies) {
  EXPECT_EQ(verdict("not x = x", "NACT-PriNSA", 5000), VerdictKind::NSAValidSet);
  EXPECT_EQ(verdict("x = x", "NACT-PriNSA", 5000), VerdictKind::SAValid);
  EXPECT_EQ(verdict("not x in x", "NACT-PriNSA", 5000), VerdictKind::SAValid);
}

TEST(SaEngine, SiPrimeBodyIsInconsistent) {
  const Verdict v = classify_sa(parse_formula("exists x1: x = $sing(x1) and not $sing(x1) in x1"),
                                *preset("NACT-SiNSA"), steps(5000));
  EXPECT_EQ(v.kind, VerdictKind::Inconsistent);
  ASSERT_TRUE(v.evidence);
  EXPECT_EQ(v.attempts.front().name, "falsum");
}

TEST(SaEngine, AttemptsShareTheBudget) {
  const Verdict v = classify_sa(parse_formula("x = x"), *preset("NACT-PriNSA"), steps(5000));
  std::size_t sum = 0;
  for (const Attempt& a : v.attempts) {
    EXPECT_LE(a.steps_used, 5000u);
    sum += a.steps_used;
  }
  EXPECT_EQ(sum, v.steps_used);
}

TEST(SaEngine, Preconditions) {
  EXPECT_THROW(classify_sa(parse_formula("x in x1"), *preset("NACT-PriNSA")), NotParameterFree);
  EXPECT_THROW(classify_sa(parse_formula("x in x"), *preset("NACT-StratNSA"), steps(100)),
               SideConditionViolated);
}

TEST(SaEngine, VerdictNames) {
  for (VerdictKind k : {VerdictKind::Inconsistent, VerdictKind::Unknown, VerdictKind::SAValid,
                        VerdictKind::NSAValidSet}) {
    EXPECT_EQ(verdict_from_name(verdict_name(k)), k);
  }
}

TEST(SaEngine, HnpRejectsRussell) {
  EXPECT_FALSE(hnp_bounded(parse_formula("not x in x"), steps(1000)));
  EXPECT_TRUE(hnp_bounded(parse_formula("forall x1: x in x1"), steps(300)));
}

TEST(SaEngine, KoRuTableHasFourSystems) {
  const auto rows = ko_ru_case_table(steps(300));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].system, "NACT-PriNSA");
  // a row can only be confirmed by a proof
  for (const KoRuRow& r : rows) {
    if (r.outcome == ClaimOutcome::Confirmed) {
      EXPECT_TRUE(r.member != ProofStatus::OutOfBudget || r.non_member != ProofStatus::OutOfBudget);
    }
  }
}

TEST(SaEngine, MetaSingsaDropsKnownProperClasses) {
  // Ru's sethood is refutable, so the SiNGSA instance is withheld
  const Verdict meta = classify_sa(parse_formula("not x in x"), *preset("NACT-SiNGSA"), steps(2000));
  SystemSpec plain = *preset("NACT-SiNGSA");
  plain.meta_singsa = false;
  const Verdict without = classify_sa(parse_formula("not x in x"), plain, steps(2000));
  EXPECT_TRUE(meta.axioms.empty());
  EXPECT_EQ(without.axioms.size(), 1u);
}
