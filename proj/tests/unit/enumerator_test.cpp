#include <gtest/gtest.h>

#include <algorithm>

#include "nact/enumerator.hpp"
#include "nact/syntax.hpp"

using namespace nact;

TEST(Enumerator, OpeningFormulas) {
  const auto fs = enumerate(4);
  ASSERT_EQ(fs.size(), 4u);
  EXPECT_EQ(to_string(fs[0]), "true");
  EXPECT_EQ(to_string(fs[1]), "false");
  EXPECT_EQ(to_string(fs[2]), "x in x");
  EXPECT_EQ(to_string(fs[3]), "not x in x");
}

TEST(Enumerator, IndexOfRoundTrips) {
  const auto fs = enumerate(800);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    ASSERT_EQ(index_of(fs[i]), i) << to_string(fs[i]);
    ASSERT_TRUE(is_enumerator_canonical(fs[i]));
    ASSERT_TRUE(is_parameter_free(fs[i]));
  }
}

TEST(Enumerator, NoDuplicatesAndSizesGrow) {
  const auto fs = enumerate(1500);
  for (std::size_t i = 1; i < fs.size(); ++i) {
    ASSERT_LE(fs[i - 1].size(), fs[i].size());
    ASSERT_FALSE(fs[i - 1] == fs[i]);
  }
  std::size_t total = 0;
  for (std::size_t s = 1; total < 1500; ++s) total += count_of_size(s);
  EXPECT_GE(total, 1500u);
}

TEST(Enumerator, SeekMatchesSequentialOrder) {
  const auto fs = enumerate(300);
  FormulaStream s;
  for (std::size_t at : {0u, 1u, 17u, 123u, 299u}) {
    s.seek(at);
    EXPECT_EQ(*s.next(), fs[at]);
    EXPECT_EQ(s.position(), at + 1);
  }
}

TEST(Enumerator, RejectsNonCanonicalInput) {
  EXPECT_THROW(index_of(parse_formula("forall x5: x in x5")), NotCanonical);
  EXPECT_THROW(index_of(parse_formula("x in x or x in x")), NotCanonical);
  const Formula nf = enumerator_normal_form(parse_formula("forall x5: x in x5"));
  EXPECT_EQ(to_string(nf), "forall x1: x in x1");
  EXPECT_NO_THROW(index_of(nf));
}

TEST(Enumerator, MaxLenEndsTheStream) {
  EnumOptions o;
  o.max_len = 3;
  FormulaStream s(o);
  std::size_t n = 0;
  while (s.next()) ++n;
  EXPECT_EQ(n, count_of_size(1, o) + count_of_size(2, o) + count_of_size(3, o));
}

namespace {

// Every core formula of exactly `size` nodes over x and the binders of the
// enclosing `depth` quantifiers, built without the enumerator's machinery.
// true and false only occur as whole formulas, so they are added by the caller.
std::vector<Formula> brute(std::size_t size, std::uint32_t depth) {
  std::vector<Formula> out;
  if (size == 3) {
    for (std::uint32_t a = 0; a <= depth; ++a) {
      for (std::uint32_t b = 0; b <= depth; ++b) out.push_back(Formula::member(Term::var(a), Term::var(b)));
    }
  }
  if (size >= 2) {
    for (const Formula& f : brute(size - 1, depth)) out.push_back(Formula::negate(f));
    for (const Formula& f : brute(size - 1, depth + 1)) {
      if (f.has_free(VarName{depth + 1})) out.push_back(Formula::forall(VarName{depth + 1}, f));
    }
  }
  for (std::size_t l = 1; l + 1 < size; ++l) {
    for (const Formula& a : brute(l, depth)) {
      for (const Formula& b : brute(size - 1 - l, depth)) out.push_back(Formula::conj(a, b));
    }
  }
  return out;
}

}  // namespace

TEST(Enumerator, ExhaustiveUpToFiveNodes) {
  std::vector<Formula> expected{Formula::verum(), Formula::falsum()};
  for (std::size_t s = 1; s <= 5; ++s) {
    for (const Formula& f : brute(s, 0)) {
      if (std::find(expected.begin(), expected.end(), f) == expected.end()) expected.push_back(f);
    }
  }
  EnumOptions o;
  o.max_len = 5;
  FormulaStream stream(o);
  std::vector<Formula> got;
  while (auto f = stream.next()) got.push_back(*f);
  ASSERT_EQ(got.size(), expected.size());
  for (const Formula& f : expected) {
    EXPECT_NE(std::find(got.begin(), got.end(), f), got.end()) << to_string(f);
  }
}
