#include <gtest/gtest.h>

#include "nact/enumerator.hpp"
#include "nact/schemata.hpp"
#include "nact/syntax.hpp"

using namespace nact;

TEST(Schemata, NamesRoundTrip) {
  for (SchemaId id : all_schemata()) {
    EXPECT_EQ(schema_from_name(schema_name(id)), id);
  }
  EXPECT_FALSE(schema_from_name("Axiom99"));
}

TEST(Schemata, PresetsResolve) {
  ASSERT_FALSE(presets().empty());
  for (const SystemSpec& s : presets()) {
    auto p = preset(s.name);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->active, s.active);
  }
  EXPECT_TRUE(preset("NACT-PriNSA")->has(SchemaId::PriNSA));
  EXPECT_FALSE(preset("NACT-ZF"));
}

TEST(Schemata, SelfApplication) {
  const Formula a = parse_formula("not x in x");
  const Formula sa = make_sa_formula(a);
  EXPECT_TRUE(sa.closed());
  EXPECT_EQ(sa, Formula::negate(Formula::member(comprehension(a), comprehension(a))));
  EXPECT_THROW(make_sa_formula(parse_formula("x in x1")), NotParameterFree);
  EXPECT_THROW(make_gsa_formula(a, 0), std::invalid_argument);
  EXPECT_TRUE(make_gsa_formula(a, 3).closed());
}

TEST(Schemata, InstancesAreClosed) {
  for (const SystemSpec& s : presets()) {
    for (const Formula& a : enumerate(40)) {
      for (const SchemaInstance& inst : instantiate(s, a)) {
        for (const Formula& f : inst.result) ASSERT_TRUE(f.closed()) << schema_name(inst.schema);
      }
    }
  }
}

TEST(Schemata, ParameterFreeSystemsRejectParameters) {
  const SystemSpec s = *preset("NACT#PriNSA");
  ASSERT_TRUE(s.parameter_free_only);
  EXPECT_THROW(instantiate(s, parse_formula("x in x1")), NotParameterFree);
}

TEST(Schemata, StratifiedSideCondition) {
  const SystemSpec s = *preset("NACT-StratNSA");
  bool saw_ok = false, saw_rejected = false;
  for (const SchemaInstance& inst : instantiate(s, parse_formula("x in x"))) {
    saw_rejected = saw_rejected || !inst.side_condition_ok;
  }
  for (const SchemaInstance& inst : instantiate(s, parse_formula("forall x1: x in x1"))) {
    saw_ok = saw_ok || inst.side_condition_ok;
  }
  EXPECT_TRUE(saw_rejected);
  EXPECT_TRUE(saw_ok);
}

TEST(Schemata, ZfTargetsFollowTheFold) {
  EXPECT_EQ(zf_targets(*preset("NACT-PriNSA")).size(), 5u);
  EXPECT_EQ(zf_targets(*preset("NACT-PriNSA2")).size(), 4u);
  EXPECT_EQ(zf_targets(*preset("NACT-PriNSA"), ZfVariant::Restricted).size(), 4u);
}
