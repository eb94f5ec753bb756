#include <gtest/gtest.h>

#include "fragmerge/formula.hpp"
#include "oracles.hpp"

using namespace fragmerge;

namespace {

UniversePtr abc() { return Universe::make({"a", "b", "c"}); }

std::string classify_text(const std::string& text) {
  return to_string(classify(parse(text, abc())).verdict);
}

}  // namespace

TEST(Parse, PrintRoundTrip) {
  auto u = abc();
  for (std::string s :
       {"a", "!a", "a & b", "a | b & c", "(a | b) & c", "a -> b -> c",
        "(a -> b) -> c", "a <-> b", "!(a & b)", "T", "F", "a & (b & c)",
        "(a | b) & (!a | !b)", "!!a", "a <-> (b <-> c)"}) {
    Formula phi = parse(s, u);
    EXPECT_EQ(phi.to_string(), s);
    EXPECT_EQ(parse(phi.to_string(), u), phi);
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  auto u = abc();
  // a | (b & c): true at {a}.
  EXPECT_TRUE(parse("a | b & c", u).evaluate(Bits{1}));
  // a -> (b -> c) is true at {} ; (a -> b) -> c is false at {}.
  EXPECT_TRUE(parse("a -> b -> c", u).evaluate(Bits{0}));
  EXPECT_FALSE(parse("(a -> b) -> c", u).evaluate(Bits{0}));
  EXPECT_EQ(parse("a & b & c", u), parse("(a & b) & c", u));
  EXPECT_EQ(parse("!a & b", u), parse("(!a) & b", u));
}

TEST(Parse, Errors) {
  auto u = abc();
  EXPECT_THROW(parse("a &", u), SyntaxError);
  EXPECT_THROW(parse("(a", u), SyntaxError);
  EXPECT_THROW(parse("a b", u), SyntaxError);
  EXPECT_THROW(parse("", u), SyntaxError);
  EXPECT_THROW(parse("z", u), UnknownAtom);
  try {
    parse("a & ?", u);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
}

TEST(Models, TruthTable) {
  auto u = Universe::make({"a", "b"});
  EXPECT_EQ(models(parse("!a | !b", u)).to_string(), "{}, {a}, {b}");
  EXPECT_EQ(models(parse("a <-> b", u)).to_string(), "{}, {a,b}");
  EXPECT_EQ(models(parse("F", u)).to_string(), "(empty)");
  EXPECT_EQ(models(parse("T", u)), ModelSet::all(u));
}

TEST(Classify, Verdicts) {
  EXPECT_EQ(classify_text("a & (!a | !b | c)"), "horn");
  EXPECT_EQ(classify_text("a & (!a | b)"), "horn+krom");
  EXPECT_EQ(classify_text("(a | b) & (!a | !b)"), "krom");
  EXPECT_EQ(classify_text("!a | !b"), "horn+krom");
  EXPECT_EQ(classify_text("a | b | c"), "general");
  EXPECT_EQ(classify_text("!(a & b)"), "general-noncnf");
  EXPECT_EQ(classify_text("a -> b"), "general-noncnf");
  EXPECT_EQ(classify_text("T"), "horn+krom");
}

TEST(Classify, SyntacticClassImpliesClosure) {
  // Every CNF formula over three atoms with up to two clauses of up to three
  // literals: a Horn verdict implies and-closed models, a Krom verdict
  // implies maj3-closed models.
  auto u = abc();
  std::vector<Formula> clauses;
  for (int mask = 1; mask < 27; ++mask) {
    std::optional<Formula> c;
    int m = mask;
    for (std::size_t i = 0; i < 3; ++i, m /= 3) {
      if (m % 3 == 0) continue;
      Formula lit = Formula::atom(u, i);
      if (m % 3 == 2) lit = !lit;
      c = c ? *c | lit : lit;
    }
    clauses.push_back(*c);
  }
  for (const auto& x : clauses) {
    for (const auto& y : clauses) {
      Formula phi = x & y;
      auto verdict = classify(phi).verdict;
      ModelSet m = models(phi);
      using V = Classification::Verdict;
      if (verdict == V::Horn || verdict == V::HornAndKrom)
        EXPECT_TRUE(is_closed(BooleanFn::conjunction(), m)) << phi.to_string();
      if (verdict == V::Krom || verdict == V::HornAndKrom)
        EXPECT_TRUE(is_closed(BooleanFn::majority3(), m)) << phi.to_string();
    }
  }
}

TEST(Clause, Normalisation) {
  EXPECT_FALSE(Clause::make({{0, true}, {0, false}}).has_value());
  auto c = Clause::make({{1, false}, {0, true}, {0, true}});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 2U);
  EXPECT_EQ(c->positives(), 1U);
  EXPECT_TRUE(c->satisfied_by(Bits{1}));
  EXPECT_FALSE(c->satisfied_by(Bits{2}));
  EXPECT_EQ(Clause::make({})->to_formula(abc()).to_string(), "F");
}

TEST(Synthesize, WorkedExample) {
  auto u = Universe::make({"a", "b"});
  ModelSet m(u, {{"a"}, {"b"}});
  Formula krom = synthesize(m, Fragment::krom(), {.minimize = true});
  EXPECT_EQ(krom.to_string(), "(a | b) & (!a | !b)");
  EXPECT_EQ(models(krom), m);
  EXPECT_THROW(synthesize(m, Fragment::horn()), NotClosed);

  ModelSet cl = closure(BooleanFn::conjunction(), m);
  EXPECT_EQ(synthesize(cl, Fragment::horn(), {.minimize = true}).to_string(),
            "!a | !b");
}

TEST(Synthesize, EdgeCases) {
  auto u = Universe::make({"a", "b"});
  EXPECT_EQ(synthesize(ModelSet::all(u), Fragment::horn()).to_string(), "T");
  Formula none = synthesize(ModelSet(u), Fragment::horn());
  EXPECT_TRUE(models(none).empty());
  EXPECT_EQ(classify(none).verdict, Classification::Verdict::HornAndKrom);
  EXPECT_THROW(synthesize(ModelSet::all(u),
                          Fragment::closure_defined(BooleanFn::majority3(), "m")),
               NoSyntacticFragment);
}

TEST(Synthesize, RoundTripTwoAtoms) {
  auto u = Universe::make({"a", "b"});
  for (const auto& s : oracle::all_sets(2, true)) {
    ModelSet m = oracle::to_models(u, s);
    for (const auto& frag : {Fragment::horn(), Fragment::krom()}) {
      if (!is_closed(frag.beta, m)) continue;
      for (bool minimize : {false, true}) {
        Formula phi = synthesize(m, frag, {.minimize = minimize});
        EXPECT_EQ(models(phi), m) << m.to_string();
        auto v = classify(phi).verdict;
        using V = Classification::Verdict;
        if (frag.clause_class == ClauseClass::Horn)
          EXPECT_TRUE(v == V::Horn || v == V::HornAndKrom) << phi.to_string();
        else
          EXPECT_TRUE(v == V::Krom || v == V::HornAndKrom) << phi.to_string();
      }
    }
  }
}
