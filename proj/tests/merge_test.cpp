#include <gtest/gtest.h>

#include <random>

#include "fragmerge/merge.hpp"
#include "oracles.hpp"

using namespace fragmerge;

namespace {

UniversePtr ab() { return Universe::make({"a", "b"}); }

std::string score_text(const Profile& e, Aggregator f, Bits w) {
  return score(CountingDistance::hamming(), f, w, e).to_string();
}

}  // namespace

TEST(Distance, CountingFunctions) {
  auto h = CountingDistance::hamming();
  auto d = CountingDistance::drastic();
  EXPECT_EQ(h(0b000, 0b111), 3U);
  EXPECT_EQ(h(0b101, 0b101), 0U);
  EXPECT_EQ(d(0b000, 0b111), 1U);
  EXPECT_EQ(d(0b010, 0b010), 0U);
  auto t = CountingDistance::table({1, 5});
  EXPECT_EQ(t.name(), "table:1,5");
  EXPECT_EQ(t(0, 3), 5U);
  EXPECT_EQ(t.max_defined(), 2U);
  EXPECT_THROW(t(0, 7), InvalidDistance);
}

TEST(Distance, TableValidation) {
  EXPECT_THROW(CountingDistance::table({}), InvalidDistance);
  EXPECT_THROW(CountingDistance::table({0}), InvalidDistance);
  EXPECT_THROW(CountingDistance::table({2, 1}), InvalidDistance);
  EXPECT_NO_THROW(CountingDistance::table({1, 1, 1}));
}

TEST(Distance, TableMustCoverUniverse) {
  auto u = Universe::make({"a", "b", "c"});
  Profile e{ModelSet(u, {{"a"}})};
  EXPECT_THROW(merge(e, ModelSet::all(u), CountingDistance::table({1, 2}),
                     Aggregator::Sum),
               InvalidDistance);
}

TEST(Aggregation, Values) {
  std::vector<std::uint64_t> d{1, 0, 2};
  EXPECT_EQ(aggregate(Aggregator::Sum, d).to_string(), "3");
  EXPECT_EQ(aggregate(Aggregator::GMax, d).to_string(), "(2, 1, 0)");
  EXPECT_THROW(aggregate(Aggregator::Sum, {}), EmptyInput);
  // GMax: lexicographic on descending vectors.
  EXPECT_LT(AggValue::descending({1, 1}), AggValue::descending({2, 0}));
  EXPECT_LT(AggValue::descending({0, 1}), AggValue::descending({1, 1}));
  EXPECT_THROW((void)(AggValue::scalar(1) < AggValue::descending({1})),
               std::invalid_argument);
}

TEST(Merge, WorkedExampleTable) {
  auto u = ab();
  Profile e{ModelSet(u, {{"a"}, {"a", "b"}}), ModelSet(u, {{"b"}, {"a", "b"}})};
  ModelSet mu(u, {{}, {"a"}, {"b"}});
  EXPECT_EQ(score_text(e, Aggregator::Sum, 0), "2");
  EXPECT_EQ(score_text(e, Aggregator::Sum, 1), "1");
  EXPECT_EQ(score_text(e, Aggregator::Sum, 2), "1");
  EXPECT_EQ(score_text(e, Aggregator::GMax, 0), "(1, 1)");
  EXPECT_EQ(score_text(e, Aggregator::GMax, 1), "(1, 0)");
  EXPECT_EQ(score_text(e, Aggregator::GMax, 2), "(1, 0)");
  for (auto f : {Aggregator::Sum, Aggregator::GMax})
    EXPECT_EQ(merge(e, mu, CountingDistance::hamming(), f).to_string(), "{a}, {b}");
}

TEST(Merge, DistanceToBaseUsesInterpretations) {
  auto u = ab();
  Base k(ModelSet(u, {{"a"}, {"a", "b"}}));
  EXPECT_EQ(dist_base(CountingDistance::hamming(), Interpretation(u, 0), k), 1U);
  EXPECT_EQ(dist_interp(CountingDistance::hamming(), Interpretation(u, 0),
                        Interpretation(u, 3)),
            2U);
}

TEST(Merge, TautologicalBaseReturnsConstraint) {
  auto u = Universe::make({"a", "b", "c"});
  for (const auto& s : oracle::all_sets(3, true)) {
    ModelSet mu = oracle::to_models(u, s);
    for (auto f : {Aggregator::Sum, Aggregator::GMax})
      EXPECT_EQ(merge(Profile{ModelSet::all(u)}, mu, CountingDistance::hamming(), f),
                mu);
  }
}

TEST(Merge, InputValidation) {
  auto u = ab();
  EXPECT_THROW(Base(ModelSet(u)), InconsistentBase);
  EXPECT_THROW(Profile(std::vector<Base>{}), EmptyInput);
  EXPECT_THROW((Profile{ModelSet::all(u), ModelSet::all(Universe::make({"x"}))}),
               UniverseMismatch);
  EXPECT_TRUE(merge(Profile{ModelSet::all(u)}, ModelSet(u),
                    CountingDistance::hamming(), Aggregator::Sum)
                  .empty());
}

TEST(Merge, MatchesNaiveOracle) {
  auto u = Universe::make({"a", "b", "c"});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> size(1, 4), pick(1, 255);
  auto random_set = [&] {
    std::set<Bits> s;
    int mask = pick(rng);
    for (Bits i = 0; i < 8; ++i)
      if ((mask >> i) & 1) s.insert(i);
    return s;
  };
  for (int round = 0; round < 400; ++round) {
    std::vector<std::set<Bits>> bases;
    std::vector<Base> profile;
    for (int i = size(rng); i > 0; --i) {
      bases.push_back(random_set());
      profile.emplace_back(oracle::to_models(u, bases.back()));
    }
    Profile e(profile);
    auto mu = random_set();
    ModelSet m = oracle::to_models(u, mu);
    EXPECT_EQ(merge(e, m, CountingDistance::hamming(), Aggregator::Sum),
              oracle::to_models(u, oracle::merge(bases, mu, oracle::hamming, false)));
    EXPECT_EQ(merge(e, m, CountingDistance::hamming(), Aggregator::GMax),
              oracle::to_models(u, oracle::merge(bases, mu, oracle::hamming, true)));
    EXPECT_EQ(merge(e, m, CountingDistance::drastic(), Aggregator::Sum),
              oracle::to_models(u, oracle::merge(bases, mu, oracle::drastic, false)));
    EXPECT_EQ(merge(e, m, CountingDistance::drastic(), Aggregator::GMax),
              oracle::to_models(u, oracle::merge(bases, mu, oracle::drastic, true)));
  }
}

TEST(Merge, PermutationInvariantAndConsistencyPreserving) {
  auto u = Universe::make({"a", "b", "c"});
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(1, 255);
  auto random_set = [&] {
    std::vector<Bits> s;
    int mask = pick(rng);
    for (Bits i = 0; i < 8; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    return ModelSet(u, s);
  };
  for (int round = 0; round < 200; ++round) {
    std::vector<Base> bases{Base(random_set()), Base(random_set()), Base(random_set())};
    Profile e(bases);
    std::vector<Base> shuffled = bases;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Profile p(shuffled);
    ModelSet mu = random_set();
    for (auto f : {Aggregator::Sum, Aggregator::GMax}) {
      ModelSet out = merge(e, mu, CountingDistance::hamming(), f);
      EXPECT_EQ(out, merge(p, mu, CountingDistance::hamming(), f));
      EXPECT_FALSE(out.empty());
      EXPECT_TRUE(out.subset_of(mu));
      // Agreement: a consistent profile merges to its conjunction under mu.
      ModelSet conj = e.conjunction().intersect(mu);
      if (!conj.empty()) EXPECT_EQ(out, conj);
    }
  }
}

TEST(Profile, JoinAndEquivalence) {
  auto u = ab();
  Profile x{ModelSet(u, {{"a"}})};
  Profile y{ModelSet(u, {{"b"}}), ModelSet(u, {{"a"}})};
  Profile xy = join(x, y);
  EXPECT_EQ(xy.size(), 3U);
  EXPECT_EQ(xy.to_string(), "[{a}; {b}; {a}]");
  EXPECT_TRUE(equivalent(Profile{ModelSet(u, {{"b"}}), ModelSet(u, {{"a"}})},
                         Profile{ModelSet(u, {{"a"}}), ModelSet(u, {{"b"}})}));
  EXPECT_FALSE(equivalent(x, y));
  EXPECT_FALSE(equivalent(xy, y));
}

TEST(Profile, MultisetEnumeration) {
  auto u = ab();
  std::vector<ModelSet> sets{ModelSet(u, {{"a"}}), ModelSet(u, {{"b"}}),
                             ModelSet(u, {{}})};
  auto ps = profiles_up_to(sets, 2);
  ASSERT_EQ(ps.size(), 3U + 6U);
  EXPECT_EQ(ps[0].to_string(), "[{a}]");
  EXPECT_EQ(ps[3].to_string(), "[{a}; {a}]");
  EXPECT_EQ(ps.back().to_string(), "[{}; {}]");
  EXPECT_EQ(profiles_up_to(sets, 3).size(), 3U + 6U + 10U);
}
