#include "popmatch/io.hpp"
#include "popmatch/oracles.hpp"
#include "popmatch/ties.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace popmatch;

namespace {

// Largest matching by trying every subset of edges.
std::size_t max_matching_exhaustive(const BipartiteGraph& g) {
  const auto edges = g.edges();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    bool ok = true;
    std::size_t size = 0;
    for (std::size_t e = 0; e < edges.size() && ok; ++e) {
      if (!(mask >> e & 1)) {
        continue;
      }
      const auto [u, v] = edges[e];
      ok = !(left >> u & 1) && !(right >> v & 1);
      left |= 1u << u;
      right |= 1u << v;
      ++size;
    }
    if (ok) {
      best = std::max(best, size);
    }
  }
  return best;
}

BipartiteGraph random_graph(std::mt19937_64& rng, std::size_t max_side) {
  const std::size_t left = 1 + rng() % max_side;
  const std::size_t right = 1 + rng() % max_side;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::size_t u = 0; u < left; ++u) {
    for (std::size_t v = 0; v < right; ++v) {
      if (rng() % 3 == 0) {
        edges.emplace_back(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v));
      }
    }
  }
  return BipartiteGraph(left, right, edges);
}

} // namespace

TEST(TiesInstance, PathGraph) {
  const auto g = parse_bipartite(read_file(testutil::data_path("path_graph.txt")));
  const auto inst = build_ties_instance(g);
  EXPECT_FALSE(inst.has_last_resort());
  EXPECT_EQ(inst.list(0), (PrefList{{0, 1}}));
  EXPECT_EQ(inst.list(1), (PrefList{{1}}));
  EXPECT_EQ(serialize_instance(inst), "2 2\na1: (p1 p2)\na2: p2\n");
}

TEST(TiesInstance, StrictExactlyWhenDegreeOne) {
  const BipartiteGraph k22(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_FALSE(build_ties_instance(k22).strict());
  const BipartiteGraph star(2, 2, {{0, 0}, {1, 1}});
  EXPECT_TRUE(build_ties_instance(star).strict());
  const BipartiteGraph isolated(2, 1, {{0, 0}});
  EXPECT_THROW(build_ties_instance(isolated), Error);
}

TEST(MaximumMatching, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng, 5);
    const auto m = maximum_matching(g);
    EXPECT_EQ(m.size(), max_matching_exhaustive(g));
    for (std::size_t u = 0; u < g.left_count(); ++u) {
      if (m.is_matched(static_cast<ApplicantId>(u))) {
        EXPECT_TRUE(g.has_edge(static_cast<std::int32_t>(u), m.post_of(static_cast<ApplicantId>(u))));
      }
    }
  }
}

TEST(Equivalence, PathGraph) {
  const auto g = parse_bipartite(read_file(testutil::data_path("path_graph.txt")));
  const auto r = check_equivalence(g);
  EXPECT_TRUE(r.holds) << r.reason;
  // {}, {a1p1}, {a1p2}, {a2p2}, {a1p1, a2p2}
  EXPECT_EQ(r.matchings, 5u);
  EXPECT_EQ(r.max_size, 2u);
  EXPECT_EQ(r.popular, 1u);
  EXPECT_EQ(r.maximum, 1u);
  EXPECT_EQ(r.identity_violations, 0u);
}

TEST(Equivalence, AllSmallGraphs) {
  std::size_t graphs = 0;
  for (std::size_t l = 1; l <= 3; ++l) {
    for (std::size_t r = 1; r <= 3; ++r) {
      testutil::for_each_graph(l, r, [&](const BipartiteGraph& g) {
        ++graphs;
        const auto rep = check_equivalence(g);
        EXPECT_TRUE(rep.holds) << rep.reason << "\n" << serialize_bipartite(g);
        EXPECT_EQ(rep.popular, rep.maximum);
        EXPECT_EQ(rep.identity_violations, 0u);
        EXPECT_EQ(rep.max_size, max_matching_exhaustive(g));
      });
    }
  }
  EXPECT_EQ(graphs, 2u + 4 + 8 + 4 + 16 + 64 + 8 + 64 + 512);
}

TEST(Equivalence, PopularCountMatchesOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(rng, 4);
    bool isolated = false;
    for (std::size_t u = 0; u < g.left_count(); ++u) {
      isolated |= g.neighbors(static_cast<std::int32_t>(u)).empty();
    }
    if (isolated) {
      continue;
    }
    const auto inst = build_ties_instance(g);
    const auto rep = check_equivalence(g);
    EXPECT_EQ(rep.popular, enumerate_popular(inst, false).size())
        << serialize_bipartite(g);
  }
}

TEST(Equivalence, CapIsEnforced) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::int32_t u = 0; u < 4; ++u) {
    for (std::int32_t v = 0; v < 4; ++v) {
      edges.emplace_back(u, v);
    }
  }
  EXPECT_THROW(check_equivalence(BipartiteGraph(4, 4, edges), 10), Error);
}
