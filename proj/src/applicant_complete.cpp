#include "popmatch/applicant_complete.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace popmatch {

PeelState PeelState::initial(const ReducedGraph& g) {
  PeelState st;
  st.graph = &g;
  st.alive_applicant.assign(g.num_applicants(), 1);
  st.degree = g.degree;
  st.alive_post.resize(g.num_total_posts);
  for (std::size_t p = 0; p < g.num_total_posts; ++p) {
    st.alive_post[p] = g.degree[p] > 0;
  }
  st.post_adj.resize(g.num_total_posts);
  for (std::size_t a = 0; a < g.num_applicants(); ++a) {
    st.post_adj[g.f[a]].push_back(static_cast<ApplicantId>(a));
    st.post_adj[g.s[a]].push_back(static_cast<ApplicantId>(a));
  }
  st.matched = Matching(g.num_applicants(), g.num_real_posts,
                        g.num_total_posts);
  return st;
}

namespace {

// Directed half-edges: four per applicant a, at 4a + k.
//   k = 0: f(a) -> a    k = 1: a -> f(a)
//   k = 2: s(a) -> a    k = 3: a -> s(a)
constexpr std::int32_t arc(ApplicantId a, int k) { return 4 * a + k; }

} // namespace

std::vector<PeelPath> find_maximal_deg2_paths(const PeelState& state,
                                              RoundEngine& engine) {
  const ReducedGraph& g = *state.graph;
  const std::size_t num_apps = g.num_applicants();
  const std::size_t num_posts = g.num_total_posts;

  // For live degree-2 posts, their two live neighbours.
  struct Nbrs {
    ApplicantId first = kNoApplicant;
    ApplicantId second = kNoApplicant;
  };
  auto nbrs = engine.map("acm.paths", num_posts, [&](std::size_t p) {
    Nbrs out;
    if (!state.alive_post[p] || state.degree[p] != 2) {
      return out;
    }
    for (ApplicantId a : state.post_adj[p]) {
      if (!state.alive_applicant[a]) {
        continue;
      }
      (out.first == kNoApplicant ? out.first : out.second) = a;
    }
    return out;
  });

  auto post_side = [&](ApplicantId a, PostId p) { return g.f[a] == p ? 0 : 2; };
  auto head_post = [&](std::int32_t e) {
    const ApplicantId a = e / 4;
    return (e % 4) == 1 ? g.f[a] : g.s[a];
  };

  auto next = engine.map("acm.paths", 4 * num_apps, [&](std::size_t i) {
    const auto e = static_cast<std::int32_t>(i);
    const ApplicantId a = e / 4;
    if (!state.alive_applicant[a]) {
      return std::int32_t{-1};
    }
    switch (e % 4) {
    case 0:
      return arc(a, 3);
    case 2:
      return arc(a, 1);
    default: {
      const PostId p = head_post(e);
      if (state.degree[p] != 2) {
        return std::int32_t{-1};
      }
      const ApplicantId b =
          nbrs[p].first == a ? nbrs[p].second : nbrs[p].first;
      return arc(b, post_side(b, p));
    }
    }
  });

  ChainInfo chains = successor_double(engine, "acm.paths", next);

  // A post->applicant arc (v_i -> v_{i+1}) lies on a peel path iff walking
  // backwards from it ends at a degree-1 post v0; its index i is the length of
  // that backward walk. Such arcs are exactly the matched edges.
  struct Slot {
    PostId source = kNoPost;
    PostId end = kNoPost;
    std::int32_t index = -1;
    std::int32_t length = 0;
  };
  auto slots = engine.map("acm.paths", 4 * num_apps, [&](std::size_t i) {
    Slot out;
    const auto e = static_cast<std::int32_t>(i);
    const ApplicantId a = e / 4;
    if (!state.alive_applicant[a] || (e % 4 != 0 && e % 4 != 2)) {
      return out;
    }
    const std::int32_t rev = e + 1;
    const std::int32_t back = chains.terminal[rev];
    const std::int32_t fwd = chains.terminal[e];
    if (back < 0 || fwd < 0) {
      return out;
    }
    const PostId v0 = head_post(back);
    if (state.degree[v0] != 1) {
      return out;
    }
    const PostId end = head_post(fwd);
    if (state.degree[end] == 1 && end < v0) {
      return out;
    }
    out.source = v0;
    out.end = end;
    out.index = chains.distance[rev];
    out.length = chains.distance[rev] + chains.distance[e];
    return out;
  });

  std::map<PostId, PeelPath> by_source;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& sl = slots[i];
    if (sl.source == kNoPost) {
      continue;
    }
    if (sl.index % 2 != 0) {
      throw InvariantError("peel path edge at odd distance from its source");
    }
    PeelPath& path = by_source[sl.source];
    const auto pairs = static_cast<std::size_t>(sl.length + 1) / 2;
    if (path.applicants.empty()) {
      path.applicants.assign(pairs, kNoApplicant);
      path.posts.assign(pairs + 1, kNoPost);
      path.posts.back() = sl.end;
    }
    const auto j = static_cast<std::size_t>(sl.index / 2);
    const auto a = static_cast<ApplicantId>(i / 4);
    path.applicants[j] = a;
    path.posts[j] = (i % 4 == 0) ? g.f[a] : g.s[a];
  }

  std::vector<PeelPath> out;
  out.reserve(by_source.size());
  for (auto& [src, path] : by_source) {
    out.push_back(std::move(path));
  }
  return out;
}

Matching cycle_perfect_matching(const ReducedGraph& g,
                                std::span<const ApplicantId> applicants,
                                RoundEngine& engine) {
  const std::size_t n = applicants.size();
  std::vector<std::int32_t> pos(g.num_applicants(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    pos[applicants[i]] = static_cast<std::int32_t>(i);
  }
  std::vector<std::vector<ApplicantId>> at_post(g.num_total_posts);
  for (ApplicantId a : applicants) {
    if (g.f[a] == g.s[a]) {
      throw InvariantError("applicant with identical f and s posts");
    }
    at_post[g.f[a]].push_back(a);
    at_post[g.s[a]].push_back(a);
  }
  for (const auto& v : at_post) {
    if (!v.empty() && v.size() != 2) {
      throw InvariantError("residual graph is not 2-regular");
    }
  }

  // Arc 2i leaves applicant i via f, arc 2i+1 via s. Following arcs walks a
  // cycle in one orientation; the two orientations form separate orbits. In
  // the orbit holding (a*, f(a*)) for the smallest applicant a*, every
  // applicant's outgoing post is its partner.
  auto next = engine.map("acm.cycles", 2 * n, [&](std::size_t i) {
    const ApplicantId a = applicants[i / 2];
    const PostId p = (i % 2 == 0) ? g.f[a] : g.s[a];
    const auto& pair = at_post[p];
    const ApplicantId b = pair[0] == a ? pair[1] : pair[0];
    const std::int32_t j = pos[b];
    return 2 * j + (g.f[b] == p ? 1 : 0);
  });
  auto keys = engine.map("acm.cycles", 2 * n, [&](std::size_t i) {
    return std::int64_t{2} * applicants[i / 2] + static_cast<std::int64_t>(i % 2);
  });
  auto mins = orbit_min(engine, "acm.cycles", next, keys);

  Matching m(g.num_applicants(), g.num_real_posts, g.num_total_posts);
  auto chosen = engine.map("acm.cycles", n, [&](std::size_t i) {
    const ApplicantId a = applicants[i];
    return mins[2 * i] % 2 == 0 ? g.f[a] : g.s[a];
  });
  for (std::size_t i = 0; i < n; ++i) {
    m.assign(applicants[i], chosen[i]);
  }
  return m;
}

AcmResult applicant_complete(const ReducedGraph& g, RoundEngine& engine) {
  AcmResult result;
  result.vertex_count = g.num_applicants() + g.num_used_posts();
  PeelState st = PeelState::initial(g);
  const std::size_t num_posts = g.num_total_posts;

  auto has_degree_one = [&] {
    for (std::size_t p = 0; p < num_posts; ++p) {
      if (st.alive_post[p] && st.degree[p] == 1) {
        return true;
      }
    }
    return false;
  };

  while (has_degree_one()) {
    ++st.round_index;
    engine.count_round("acm.peel", num_posts);
    auto paths = find_maximal_deg2_paths(st, engine);
    if (paths.empty()) {
      throw InvariantError("degree-1 post without a peel path");
    }
    // Paths share at most their end post, which is never matched or removed.
    engine.for_each("acm.commit", paths.size(), [&](std::size_t i) {
      const PeelPath& path = paths[i];
      for (std::size_t j = 0; j < path.applicants.size(); ++j) {
        st.matched.assign(path.applicants[j], path.posts[j]);
        st.alive_applicant[path.applicants[j]] = 0;
        st.alive_post[path.posts[j]] = 0;
      }
    });
    st.degree = engine.map("acm.commit", num_posts, [&](std::size_t p) {
      std::int32_t d = 0;
      if (st.alive_post[p]) {
        for (ApplicantId a : st.post_adj[p]) {
          d += st.alive_applicant[a];
        }
      }
      return d;
    });
  }
  result.peel_rounds = st.round_index;
  result.peeled = st.matched;

  st.alive_post = engine.map("acm.commit", num_posts, [&](std::size_t p) {
    return static_cast<std::uint8_t>(st.alive_post[p] && st.degree[p] > 0);
  });

  std::vector<ApplicantId> rest_apps;
  std::vector<PostId> rest_posts;
  for (std::size_t a = 0; a < g.num_applicants(); ++a) {
    if (st.alive_applicant[a]) {
      rest_apps.push_back(static_cast<ApplicantId>(a));
    }
  }
  for (std::size_t p = 0; p < num_posts; ++p) {
    if (st.alive_post[p]) {
      rest_posts.push_back(static_cast<PostId>(p));
    }
  }
  result.residual_applicants = rest_apps;

  if (rest_posts.size() < rest_apps.size()) {
    result.violation = HallViolation{std::move(rest_apps), std::move(rest_posts)};
    return result;
  }
  if (rest_posts.size() != rest_apps.size()) {
    throw InvariantError("residual graph has more posts than applicants");
  }
  for (PostId p : rest_posts) {
    if (st.degree[p] != 2) {
      throw InvariantError("residual post of degree " +
                           std::to_string(st.degree[p]));
    }
  }

  Matching cyc = cycle_perfect_matching(g, rest_apps, engine);
  Matching m = st.matched;
  for (ApplicantId a : rest_apps) {
    m.assign(a, cyc.post_of(a));
  }
  result.matching = std::move(m);
  return result;
}

} // namespace popmatch
