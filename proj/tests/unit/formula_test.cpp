#include <gtest/gtest.h>

#include "nact/formula.hpp"
#include "nact/library.hpp"
#include "nact/syntax.hpp"

using namespace nact;
using F = Formula;

TEST(Syntax, PrintParseRoundTrip) {
  for (const char* text : {"x in x", "not x in x", "forall x1: x in x1 and x1 in x",
                           "exists x1: x = $sing(x1) and not $sing(x1) in x1",
                           "set({|x1: not x1 in x1|})", "x in $Ko($Ru)", "slim(x) implies set(x)",
                           "fund($Omega) iff true"}) {
    const F f = parse_formula(text);
    EXPECT_EQ(to_string(f), text);
    EXPECT_TRUE(parse_formula(to_string(f)).identical(f));
  }
}

TEST(Syntax, ParseErrorCarriesOffset) {
  try {
    parse_formula("x in");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(parse_formula("x in y"), ParseError);
  // unknown names parse; they stay opaque
  EXPECT_NO_THROW(parse_formula("$nosuch in x"));
}

TEST(Formula, AlphaEquivalence) {
  EXPECT_EQ(parse_formula("forall x1: x1 in x"), parse_formula("forall x7: x7 in x"));
  EXPECT_NE(parse_formula("forall x1: x1 in x"), parse_formula("forall x1: x in x1"));
  EXPECT_EQ(parse_term("{x2: x2 in x}"), parse_term("{x5: x5 in x}"));
}

TEST(Formula, SubstitutionAvoidsCapture) {
  // x := x1 under a binder for x1 must rename the binder
  const F f = parse_formula("forall x1: x in x1");
  const F g = substitute(f, VarName{0}, Term::var(1));
  EXPECT_TRUE(g.has_free(VarName{1}));
  EXPECT_EQ(g, parse_formula("forall x2: x1 in x2"));
}

TEST(Formula, ParameterFreedom) {
  EXPECT_TRUE(is_parameter_free(parse_formula("forall x1: x in x1")));
  EXPECT_FALSE(is_parameter_free(parse_formula("x in x1")));
  EXPECT_TRUE(is_parameter_free(parse_formula("true")));
}

TEST(Formula, ContainsInstanceRenamesTheParameter) {
  const F needle = parse_formula("not x in x");
  EXPECT_TRUE(contains_instance(parse_formula("forall x1: not x1 in x1"), needle));
  EXPECT_TRUE(contains_instance(parse_formula("x in x and not x in x"), needle));
  EXPECT_FALSE(contains_instance(parse_formula("forall x1: not x in x1"), needle));
}

TEST(Library, NamedTermsUnfold) {
  for (const NamedTermInfo& info : named_terms()) {
    std::vector<Term> args(info.arity, Term::var(0));
    const Term t = Term::named(info.name, args);
    ASSERT_TRUE(definition(t)) << info.name;
    EXPECT_TRUE(definition(t)->is_abstraction()) << info.name;
  }
  EXPECT_FALSE(definition(Term::named("sing")));  // arity mismatch
  const F unfolded = unfold_named(parse_formula("x in $Ru"));
  EXPECT_EQ(to_string(unfolded).find('$'), std::string::npos);
}
