#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

using namespace fragmerge;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(FRAGMERGE_EXAMPLES_DIR) + "/" + name;
}

}  // namespace

TEST(Cli, MergeWithClosureAndHornFormula) {
  auto r = run({"merge", data("example1.txt"), "--refinement", "closure",
                "--fragment", "horn"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("merged (hamming,sigma): {a}, {b}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("refined (closure(and)): {}, {a}, {b}"), std::string::npos);
  EXPECT_NE(r.out.find("#(refined, E) = 2"), std::string::npos);
  EXPECT_NE(r.out.find("formula (horn): !a | !b"), std::string::npos);
}

TEST(Cli, MergeNotExpressibleExits4) {
  auto r = run({"merge", data("example1.txt"), "--fragment", "horn"});
  EXPECT_EQ(r.code, cli::kNotExpressible);
  EXPECT_NE(r.err.find("not expressible"), std::string::npos);
  // Krom can express the same result.
  auto k = run({"merge", data("example1.txt"), "--fragment", "krom"});
  EXPECT_EQ(k.code, 0);
  EXPECT_NE(k.out.find("(a | b) & (!a | !b)"), std::string::npos);
}

TEST(Cli, MergeLexOrderOverride) {
  auto r = run({"merge", data("example1.txt"), "--refinement", "lex", "--fragment",
                "horn", "--lex-order", "{b}"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("refined (lex(and)): {b}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("formula (horn): !a & b"), std::string::npos) << r.out;
}

TEST(Cli, MergeTautologicalBaseReturnsConstraint) {
  auto r = run({"merge", data("tautology.txt"), "--format", "machine"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "merged\thamming,sigma\t{a}, {b}, {a,b}\ncount\tmerged\t1\n");
}

TEST(Cli, ModelListsAndRepeatedBases) {
  auto r = run({"merge", data("models.txt"), "--aggregator", "gmax"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("merged (hamming,gmax): {a}, {b}"), std::string::npos) << r.out;
}

TEST(Cli, MergeErrors) {
  EXPECT_EQ(run({"merge", data("inconsistent.txt")}).code, cli::kInconsistentBase);
  auto bad = run({"merge", data("bad_syntax.txt")});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"merge", data("missing.txt")}).code, cli::kUsage);
  EXPECT_EQ(run({"merge", data("example1.txt"), "--distance", "table:2,1"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"merge", data("example1.txt"), "--distance", "table:1"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"merge", data("example1.txt"), "--refinement", "closure"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"merge", data("example1.txt"), "--format", "xml"}).code, cli::kUsage);
}

TEST(Cli, MergeTableDistance) {
  auto r = run({"merge", data("example1.txt"), "--distance", "table:1,3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("merged (table:1,3,sigma): {a}, {b}"), std::string::npos) << r.out;
}

TEST(Cli, ParseProblemFile) {
  auto p = cli::parse_problem("atoms: a b\nbase K1: a\nbase K1: b # both\n");
  ASSERT_EQ(p.bases.size(), 1U);
  EXPECT_EQ(p.bases[0].base.models().to_string(), "{a,b}");
  EXPECT_EQ(p.bases[0].base.source().size(), 2U);
  EXPECT_EQ(p.constraint, ModelSet::all(p.universe));
  EXPECT_THROW(cli::parse_problem("base K: a\n"), Error);
  EXPECT_THROW(cli::parse_problem("atoms: a\nbase K: b\n"), Error);
  EXPECT_THROW(cli::parse_problem("atoms: a\nfoo: a\n"), Error);
  EXPECT_THROW(cli::parse_problem("atoms: a\n"), Error);
  EXPECT_THROW(cli::parse_problem("atoms: a\nbase K: a\nbase K: !a\n"),
               InconsistentBase);
}

TEST(Cli, CheckExitCodes) {
  auto ok = run({"check", "--op", "hamming,sigma,closure", "--fragment", "horn",
                 "--postulates", "ic0-ic3", "--atoms", "2"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("0 witness(es)"), std::string::npos);

  auto found = run({"check", "--op", "hamming,gmax,closure", "--fragment", "horn",
                    "--postulates", "ic4", "--atoms", "2"});
  EXPECT_EQ(found.code, 1);
  EXPECT_NE(found.out.find("E1=[{}; {a,b}] mu=[{}, {a}, {b}, {a,b}]"),
            std::string::npos)
      << found.out;

  EXPECT_EQ(run({"check", "--postulates", "ic9"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "--atoms", "9"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "--op", "hamming"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "--op", "hamming,sigma,closure", "--fragment", "none"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"check", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "--atoms", "two"}).code, cli::kUsage);
}

TEST(Cli, CheckMachineOutputIsStable) {
  std::vector<std::string> args{"check", "--op", "table:1,2,gmax,lex-closure",
                                "--fragment", "horn", "--postulates", "ic4-ic8",
                                "--format", "machine"};
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("summary\ttable:1,2,gmax,lex-closure(and)\thorn\t"),
            std::string::npos)
      << a.out;
}

TEST(Cli, Reproduce) {
  auto r = run({"reproduce", "ex1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2^U  | K1 | K2 | Sigma | GMax"), std::string::npos);
  auto p = run({"reproduce", "prop11-ic6"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("GMax"), std::string::npos);
  EXPECT_NE(p.out.find("IC6 violated"), std::string::npos);
  EXPECT_EQ(run({"reproduce", "nosuch"}).code, cli::kUsage);
  EXPECT_EQ(run({"reproduce"}).code, cli::kUsage);
  auto list = run({"reproduce", "--list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("prop8-ic5\n"), std::string::npos);
  auto m1 = run({"reproduce", "prop8-ic5", "--format", "machine"});
  EXPECT_EQ(m1.out, run({"reproduce", "prop8-ic5", "--format", "machine"}).out);
}

TEST(Cli, ClassifyAndClosure) {
  auto c = run({"classify", "(a | b) & (!a | !b)"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("syntactic class: krom"), std::string::npos);
  EXPECT_NE(c.out.find("closed under and: no"), std::string::npos);
  auto m = run({"classify", "--format", "machine", "--atoms", "a b c", "a -> b"});
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("verdict\tgeneral-noncnf\n"), std::string::npos) << m.out;
  EXPECT_EQ(run({"classify", "a &"}).code, cli::kUsage);

  auto cl = run({"closure", "--atoms", "a b", "{a} {b}"});
  EXPECT_EQ(cl.code, 0);
  EXPECT_NE(cl.out.find("closure under and: {}, {a}, {b}"), std::string::npos) << cl.out;
  EXPECT_NE(cl.out.find("not closed: {a} {b} -> {}"), std::string::npos) << cl.out;
  auto maj = run({"closure", "--fn", "maj3", "--atoms", "a b", "{a} {b}"});
  EXPECT_NE(maj.out.find("already closed"), std::string::npos);
  EXPECT_EQ(run({"closure", "--fn", "xor", "{a}"}).code, cli::kUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, 0);
}
