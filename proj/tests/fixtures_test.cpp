#include <gtest/gtest.h>

#include "fragmerge/postulates.hpp"

using namespace fragmerge;

TEST(Fixtures, CatalogIsComplete) {
  const std::vector<std::string> expected{
      "ex1",           "ex3",            "prop3-horn",     "prop3-krom",
      "prop4-horn",    "prop4-krom",     "prop6-fairness", "prop8-ic5",
      "prop8-ic7-horn", "prop8-ic7-krom", "prop9-ic4",      "prop10-nonfair",
      "prop11-ic6"};
  EXPECT_EQ(fixture_catalog(), expected);
  EXPECT_THROW(reproduce("nosuch"), UnknownFixture);
}

class FixtureReproduction : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureReproduction, EveryCellMatches) {
  FixtureReport r = reproduce(GetParam());
  EXPECT_TRUE(r.passed()) << r.render_text();
  EXPECT_GT(r.cell_count(), 0U);
  // Machine output is stable across runs.
  EXPECT_EQ(r.render_machine(), reproduce(GetParam()).render_machine());
}

INSTANTIATE_TEST_SUITE_P(All, FixtureReproduction,
                         ::testing::ValuesIn(fixture_catalog()),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Fixtures, WorkedExampleRendering) {
  FixtureReport r = reproduce("ex1");
  const std::string text = r.render_text();
  EXPECT_NE(text.find("2^U  | K1 | K2 | Sigma | GMax"), std::string::npos) << text;
  EXPECT_NE(text.find("{}   | 1  | 1  | 2     | (1, 1)"), std::string::npos) << text;
  EXPECT_NE(text.find("PASS"), std::string::npos);
  const std::string machine = r.render_machine();
  EXPECT_NE(machine.find("ex1\tcell\tdistances (hamming)/{a}/Sigma\t1\t1\tpass"),
            std::string::npos)
      << machine;
  EXPECT_NE(machine.find("ex1\tverdict\tpass"), std::string::npos);
}

TEST(Fixtures, MismatchIsReported) {
  FixtureReport r = reproduce("ex3");
  r.checks.front().cell.expected = "something else";
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.render_text().find("[FAIL]"), std::string::npos);
  EXPECT_NE(r.render_machine().find("\tfail\n"), std::string::npos);
}
