#include <gtest/gtest.h>

#include "nact/model.hpp"
#include "nact/schemata.hpp"
#include "nact/syntax.hpp"

using namespace nact;

namespace {
SystemSpec custom(std::initializer_list<SchemaId> ids) {
  SystemSpec s;
  s.name = "custom";
  s.active = ids;
  return s;
}
}  // namespace

TEST(Model, TextRoundTrip) {
  for (const char* text : {"1:0", "1:1", "2:00/10", "3:000/100/110"}) {
    const FiniteModel m = FiniteModel::from_text(text);
    EXPECT_TRUE(m.valid());
    EXPECT_EQ(m.to_text(), text);
  }
  EXPECT_THROW(FiniteModel::from_text("2:00/00"), std::invalid_argument);  // not extensional
  EXPECT_THROW(FiniteModel::from_text("2:00"), std::invalid_argument);
  EXPECT_THROW(FiniteModel::from_text("x"), std::invalid_argument);
}

TEST(Model, InjectiveModelCounts) {
  // n! * C(2^n, n) orderings of distinct extensions
  EXPECT_EQ(all_models(1).size(), 2u);
  EXPECT_EQ(all_models(2).size(), 12u);
  EXPECT_EQ(all_models(3).size(), 336u);
  EXPECT_EQ(all_models(4).size(), 43680u);
}

TEST(Model, Evaluation) {
  const FiniteModel m = FiniteModel::from_text("2:00/10");  // 0 = {}, 1 = {0}
  EXPECT_TRUE(eval(m, parse_formula("exists x: forall x1: not x1 in x")));
  EXPECT_TRUE(eval(m, parse_formula("set($0)")));
  EXPECT_FALSE(eval(m, parse_formula("set($V)")));
  EXPECT_TRUE(eval(m, parse_formula("set($sing($0))")));
  EXPECT_TRUE(eval(m, parse_formula("x in x1"), {{0, false, 0}, {1, false, 1}}));
  EXPECT_THROW(eval(m, parse_formula("x in x1")), UnboundVariable);
  EXPECT_EQ(eval_class(m, parse_term("$V")), m.universe());
  EXPECT_EQ(eval_class(m, parse_term("$Ru")), m.universe());
}

TEST(Model, SizeClasses) {
  const FiniteModel m = FiniteModel::from_text("2:00/10");
  EXPECT_EQ(classify(m, 0b00).size, SizeKind::Slim);
  EXPECT_EQ(classify(m, 0b01).size, SizeKind::Medium);
  EXPECT_EQ(classify(m, 0b11).size, SizeKind::Mighty);
  // {0} is a set, its complement {1} is not
  EXPECT_TRUE(classify(m, 0b01).medium_nc);
  EXPECT_FALSE(classify(m, 0b01).medium_c);
  // here 0 = {1} and 1 = {0}
  const FiniteModel swap = FiniteModel::from_text("2:01/10");
  EXPECT_TRUE(classify(swap, 0b01).medium_c);
  EXPECT_FALSE(classify(swap, 0b00).medium_c);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (const FiniteModel& x : all_models(n)) ASSERT_EQ(trichotomy_violations(x), 0u);
  }
}

TEST(Model, SmallSystems) {
  const SystemSpec five_six = custom({SchemaId::Axiom5, SchemaId::Axiom6});
  EXPECT_TRUE(check_system(FiniteModel::from_text("1:0"), five_six).holds);
  const SystemCheck bad = check_system(FiniteModel::from_text("1:1"), five_six);
  EXPECT_FALSE(bad.holds);
  ASSERT_FALSE(bad.counterexamples.empty());
  EXPECT_EQ(bad.counterexamples[0].schema, SchemaId::Axiom6);
  EXPECT_TRUE(search_models(3, custom({SchemaId::Axiom5a, SchemaId::Axiom6c})).empty());
  EXPECT_EQ(search_models(2, custom({})).size(), 14u);
}

TEST(Model, ProvabilitySchemataAreNotCheckable) {
  EXPECT_THROW(check_system(FiniteModel::from_text("1:0"), *preset("NACT-PriNSA")),
               NotModelCheckable);
  EXPECT_THROW(schema_axiom(SchemaId::SiNSA), NotModelCheckable);
}
