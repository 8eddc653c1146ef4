#include "popmatch/applicant_complete.hpp"
#include "popmatch/generator.hpp"
#include "popmatch/io.hpp"
#include "popmatch/oracles.hpp"
#include "popmatch/popular.hpp"
#include "popmatch/reduce.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace popmatch;
using testutil::load_instance;
using testutil::make_matching;
using testutil::strict_instance;

namespace {

// The matching expected for golden_pm.txt.
Matching golden_m(const PrefInstance& inst) {
  return make_matching(inst, {{1, 1}, {2, 2}, {3, 4}, {4, 3},
                              {5, 5}, {6, 7}, {7, 8}, {8, 9}});
}

} // namespace

TEST(Reduce, GoldenPostsAndLists) {
  const auto inst = load_instance("golden_pm.txt");
  const auto g = reduce(inst);
  EXPECT_EQ(g.f_posts(), (std::vector<PostId>{0, 3, 4, 6}));
  EXPECT_EQ(g.s_posts(), (std::vector<PostId>{1, 2, 5, 7, 8}));
  const std::vector<PostId> f{0, 3, 3, 0, 4, 6, 6, 6};
  const std::vector<PostId> s{1, 1, 2, 2, 1, 5, 7, 8};
  EXPECT_EQ(g.f, f);
  EXPECT_EQ(g.s, s);
  const std::vector<std::int32_t> deg{2, 3, 2, 2, 1, 1, 3, 1, 1};
  for (std::size_t p = 0; p < deg.size(); ++p) {
    EXPECT_EQ(g.degree[p], deg[p]) << "p" << p + 1;
  }
  EXPECT_EQ(g.f_inverse(6), (std::vector<ApplicantId>{5, 6, 7}));
  EXPECT_EQ(g.num_used_posts(), 9u);
}

TEST(Reduce, SPostFallsBackToLastResort) {
  // a2's whole list is f-posts.
  const auto inst = strict_instance(3, {{1}, {1, 2}, {2}});
  const auto g = reduce(inst);
  EXPECT_EQ(g.s[0], inst.last_resort(0));
  EXPECT_EQ(g.s[1], inst.last_resort(1));
  EXPECT_EQ(g.s[2], inst.last_resort(2));
  EXPECT_TRUE(g.is_s_post[inst.last_resort(2)]);
  // p3 is on no list: neither f-post nor s-post.
  EXPECT_FALSE(g.is_s_post[2]);
}

TEST(Reduce, RejectsTiesAndMissingLastResorts) {
  EXPECT_THROW(reduce(parse_instance("1 2\na1: (p1 p2)\n")), Error);
  EXPECT_THROW(reduce(PrefInstance(1, {{{0}}}, false)), Error);
}

TEST(Reduce, ParallelMatchesSequential) {
  GenOptions opts;
  opts.applicants = 600;
  opts.posts = 400;
  opts.max_len = 6;
  const auto inst = gen_random(opts);
  RoundEngine seq(ExecMode::Sequential);
  RoundEngine par(ExecMode::Parallel, 3, 64);
  const auto a = reduce(inst, seq);
  const auto b = reduce(inst, par);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.s, b.s);
  EXPECT_EQ(a.degree, b.degree);
}

TEST(Peel, GoldenFirstRoundPaths) {
  const auto inst = load_instance("golden_pm.txt");
  const auto g = reduce(inst);
  const auto st = PeelState::initial(g);
  const auto paths = find_maximal_deg2_paths(st);
  std::vector<std::pair<ApplicantId, PostId>> matched;
  for (const auto& path : paths) {
    for (std::size_t j = 0; j < path.applicants.size(); ++j) {
      matched.emplace_back(path.applicants[j], path.posts[j]);
    }
  }
  std::sort(matched.begin(), matched.end());
  const std::vector<std::pair<ApplicantId, PostId>> expect{
      {4, 4}, {5, 5}, {6, 7}, {7, 8}};
  EXPECT_EQ(matched, expect);
}

TEST(Peel, PathAlternatesAlongDegreeTwoChain) {
  // p3 - a3 - p2 - a2 - p1 - a1 - p4: p3 and p4 have degree 1.
  const auto g = ReducedGraph::from_pairs(4, 4, {0, 1, 1}, {3, 0, 2});
  const auto st = PeelState::initial(g);
  const auto paths = find_maximal_deg2_paths(st);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].source(), 2);
  EXPECT_EQ(paths[0].end(), 3);
  EXPECT_EQ(paths[0].applicants, (std::vector<ApplicantId>{2, 1, 0}));
  EXPECT_EQ(paths[0].posts, (std::vector<PostId>{2, 1, 0, 3}));
}

TEST(Peel, CyclePerfectMatching) {
  // Cycle a1-p1-a2-p2-a3-p3-a1.
  const auto g = ReducedGraph::from_pairs(3, 3, {0, 1, 2}, {1, 2, 0});
  const std::vector<ApplicantId> apps{0, 1, 2};
  const auto m = cycle_perfect_matching(g, apps);
  EXPECT_EQ(m.post_of(0), 0);
  EXPECT_EQ(m.post_of(1), 1);
  EXPECT_EQ(m.post_of(2), 2);
  EXPECT_THROW(cycle_perfect_matching(g, std::vector<ApplicantId>{0, 1}), InvariantError);
}

TEST(Solve, GoldenMatchesExpected) {
  const auto inst = load_instance("golden_pm.txt");
  const auto res = solve_popular(inst);
  ASSERT_TRUE(res);
  EXPECT_EQ(*res.matching, golden_m(inst));
  EXPECT_TRUE(is_popular(*res.matching, inst).popular);
  EXPECT_TRUE(brute_force_popular(inst, *res.matching, true));
  EXPECT_LE(res.acm.peel_rounds, ceil_log2(res.acm.vertex_count) + 1);
  // Before promotion p7 is free and a6 sits on p6.
  ASSERT_TRUE(res.acm.matching);
  EXPECT_EQ(res.acm.matching->post_of(5), 5);
  EXPECT_FALSE(res.acm.matching->post_matched(6));
}

TEST(Solve, InfeasibleInstance) {
  const auto inst = load_instance("infeasible.txt");
  const auto res = solve_popular(inst);
  EXPECT_FALSE(res);
  ASSERT_TRUE(res.acm.violation);
  EXPECT_LT(res.acm.violation->posts.size(), res.acm.violation->applicants.size());
  EXPECT_TRUE(enumerate_popular(inst).empty());
}

TEST(Solve, EmptyAndSingleton) {
  const PrefInstance empty(0, {});
  const auto res = solve_popular(empty);
  ASSERT_TRUE(res);
  EXPECT_EQ(res.matching->pair_count(), 0u);
  const auto one = strict_instance(1, {{1}});
  EXPECT_EQ(solve_popular(one).matching->post_of(0), 0);
}

TEST(Solve, AgreesWithOracleOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    GenOptions opts;
    opts.applicants = 1 + rng() % 6;
    opts.posts = 1 + rng() % 6;
    opts.max_len = std::min<std::size_t>(opts.posts, 3);
    opts.seed = rng();
    const auto inst = gen_random(opts);
    const auto res = solve_popular(inst);
    const auto all = enumerate_popular(inst);
    EXPECT_EQ(static_cast<bool>(res), !all.empty()) << serialize_instance(inst);
    if (res) {
      EXPECT_TRUE(std::binary_search(all.begin(), all.end(), *res.matching))
          << serialize_instance(inst);
    }
  }
}

TEST(Solve, ParallelMatchesSequential) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenOptions opts;
    opts.applicants = 700;
    opts.posts = 900;
    opts.seed = seed;
    opts.max_len = 5;
    const auto inst = gen_random(opts);
    RoundEngine seq(ExecMode::Sequential);
    RoundEngine par(ExecMode::Parallel, 3, 32);
    const auto a = solve_popular(inst, seq);
    const auto b = solve_popular(inst, par);
    EXPECT_EQ(a.matching, b.matching);
    EXPECT_EQ(a.acm.peel_rounds, b.acm.peel_rounds);
  }
}

TEST(Solve, PeelRoundBound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    GenOptions opts;
    opts.applicants = 1 + rng() % 128;
    opts.posts = 1 + rng() % 128;
    opts.max_len = std::min<std::size_t>(opts.posts, 1 + rng() % 6);
    opts.seed = rng();
    const auto inst = gen_random(opts);
    const auto res = solve_popular(inst);
    EXPECT_LE(res.acm.peel_rounds, ceil_log2(res.acm.vertex_count) + 1);
  }
}

TEST(Promote, SmallestOnSPostMovesUp) {
  const auto inst = load_instance("golden_pm.txt");
  const auto g = reduce(inst);
  auto m = golden_m(inst);
  m.unassign(5);
  m.assign(5, 5); // a6 back on p6, p7 free
  const auto promoted = promote_unmatched_fposts(m, g);
  EXPECT_EQ(promoted, golden_m(inst));
}

TEST(Characterization, ReportsReasons) {
  const auto inst = load_instance("golden_pm.txt");
  auto m = golden_m(inst);
  m.unassign(0); // a1 falls to l(a1), p1 unmatched
  const auto report = is_popular(m, inst);
  EXPECT_FALSE(report.popular);
  EXPECT_EQ(report.unmatched_f_posts, (std::vector<PostId>{0}));
  EXPECT_EQ(report.misplaced_applicants, (std::vector<ApplicantId>{0}));
  EXPECT_FALSE(brute_force_popular(inst, m, true));
}
