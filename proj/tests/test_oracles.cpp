#include "popmatch/oracles.hpp"
#include "popmatch/popular.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>

using namespace popmatch;
using testutil::load_instance;
using testutil::load_matching;

TEST(Oracle, GoldenMatchingIsPopular) {
  const auto inst = load_instance("golden_pm.txt");
  const auto m = load_matching("golden_pm_m.txt", inst);
  EXPECT_TRUE(brute_force_popular(inst, m, true));
  EXPECT_FALSE(more_popular_witness(inst, m, true));

  auto worse = m;
  worse.unassign(0);
  worse.assign(0, inst.last_resort(0));
  const auto witness = more_popular_witness(inst, worse, true);
  ASSERT_TRUE(witness);
  EXPECT_TRUE(more_popular(inst, *witness, worse));
}

TEST(Oracle, PreferCountAndAsymmetry) {
  // a1: p1 p2, a2: p1
  const auto inst = testutil::strict_instance(2, {{1, 2}, {1}});
  const auto x = testutil::make_matching(inst, {{1, 1}});
  const auto y = testutil::make_matching(inst, {{1, 2}, {2, 1}});
  EXPECT_EQ(prefer_count(inst, x, y), 1u);
  EXPECT_EQ(prefer_count(inst, y, x), 1u);
  EXPECT_FALSE(more_popular(inst, x, y));
  EXPECT_FALSE(more_popular(inst, y, x));
  const auto empty = Matching::for_instance(inst);
  EXPECT_TRUE(more_popular(inst, y, empty));
  EXPECT_FALSE(more_popular(inst, empty, y));
}

TEST(Oracle, EnumerateMatchingsCounts) {
  // a1: p1 p2, a2: p1 p2 (each with a last resort).
  const auto inst = testutil::strict_instance(2, {{1, 2}, {1, 2}});
  // Complete: p1, p2 or a last resort each, 9 - 2 collisions. Partial adds
  // "unmatched" as a fourth option, 16 - 2.
  EXPECT_EQ(enumerate_matchings(inst, true).size(), 7u);
  EXPECT_EQ(enumerate_matchings(inst, false).size(), 14u);
  EXPECT_THROW(enumerate_matchings(inst, true, 3), Error);
}

TEST(Oracle, RejectsLargeInstances) {
  std::vector<std::vector<int>> lists(kOracleMaxApplicants + 1, {1});
  const auto inst = testutil::strict_instance(1, lists);
  EXPECT_THROW(enumerate_popular(inst), Error);
}

TEST(Oracle, CharacterizationAgreesExhaustively) {
  std::size_t instances = 0;
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t p = 1; p <= 3; ++p) {
      testutil::for_each_small_instance(a, p, 3, [&](const PrefInstance& inst) {
        ++instances;
        for (const auto& m : enumerate_matchings(inst, true)) {
          ASSERT_EQ(is_popular(m, inst).popular, brute_force_popular(inst, m, true));
        }
      });
    }
  }
  EXPECT_GT(instances, 50u);
}

TEST(Oracle, StableLatticeEnds) {
  const auto one = random_stable_instance(1, 3);
  const auto all1 = enumerate_stable(one);
  ASSERT_EQ(all1.size(), 1u);
  EXPECT_EQ(all1[0].wife(0), 0);

  const auto inst = testutil::load_stable("golden_sm.txt");
  const auto all = enumerate_stable(inst);
  EXPECT_TRUE(std::binary_search(all.begin(), all.end(), gale_shapley(inst)));
  for (const auto& x : all) {
    EXPECT_TRUE(is_stable(inst, x));
    EXPECT_TRUE(dominates(inst, gale_shapley(inst), x));
  }
  EXPECT_THROW(enumerate_stable(random_stable_instance(kOracleMaxStableSize + 1, 1)),
               Error);
}

TEST(Oracle, ExhaustiveRotationsOnGolden) {
  const auto inst = testutil::load_stable("golden_sm.txt");
  const auto m = testutil::load_stable_matching("golden_sm_m.txt", inst);
  const auto rs = exposed_rotations_exhaustive(inst, m);
  ASSERT_EQ(rs.size(), 2u);
  for (const auto& r : rs) {
    EXPECT_TRUE(is_exposed_rotation(inst, m, r));
    EXPECT_TRUE(is_stable(inst, eliminate(m, r)));
  }
}
