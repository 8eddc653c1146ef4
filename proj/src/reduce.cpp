#include "popmatch/reduce.hpp"

namespace popmatch {

std::vector<PostId> ReducedGraph::f_posts() const {
  std::vector<PostId> out;
  for (std::size_t p = 0; p < is_f_post.size(); ++p) {
    if (is_f_post[p]) {
      out.push_back(static_cast<PostId>(p));
    }
  }
  return out;
}

std::vector<PostId> ReducedGraph::s_posts() const {
  std::vector<PostId> out;
  for (std::size_t p = 0; p < is_s_post.size(); ++p) {
    if (is_s_post[p]) {
      out.push_back(static_cast<PostId>(p));
    }
  }
  return out;
}

std::vector<ApplicantId> ReducedGraph::f_inverse(PostId p) const {
  std::vector<ApplicantId> out;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] == p) {
      out.push_back(static_cast<ApplicantId>(a));
    }
  }
  return out;
}

std::size_t ReducedGraph::num_used_posts() const {
  std::size_t n = 0;
  for (auto d : degree) {
    n += d > 0 ? 1 : 0;
  }
  return n;
}

ReducedGraph ReducedGraph::from_pairs(std::size_t num_real_posts,
                                      std::size_t num_total_posts,
                                      std::vector<PostId> f,
                                      std::vector<PostId> s) {
  ReducedGraph g;
  g.num_real_posts = num_real_posts;
  g.num_total_posts = num_total_posts;
  g.is_f_post.assign(num_total_posts, 0);
  g.is_s_post.assign(num_total_posts, 0);
  g.degree.assign(num_total_posts, 0);
  for (std::size_t a = 0; a < f.size(); ++a) {
    g.is_f_post[f[a]] = 1;
    g.is_s_post[s[a]] = 1;
    ++g.degree[f[a]];
    ++g.degree[s[a]];
  }
  g.f = std::move(f);
  g.s = std::move(s);
  return g;
}

ReducedGraph reduce(const PrefInstance& inst, RoundEngine& engine) {
  if (!inst.strict()) {
    throw Error("reduced graph requires strictly ordered lists");
  }
  if (!inst.has_last_resort()) {
    throw Error("reduced graph requires last resort posts");
  }
  const std::size_t num_apps = inst.num_applicants();
  const std::size_t num_posts = inst.num_total_posts();

  // Edge incidence on both sides. Applicant-side entries remember their slot
  // in the post-side list so phase 3 can read phase 2's per-post output.
  struct PostEdge {
    ApplicantId applicant;
    int rank;
  };
  struct AppEdge {
    PostId post;
    int rank;
    std::size_t slot;
  };
  std::vector<std::vector<PostEdge>> by_post(num_posts);
  std::vector<std::vector<AppEdge>> by_app(num_apps);
  for (std::size_t a = 0; a < num_apps; ++a) {
    const auto& list = inst.list(static_cast<ApplicantId>(a));
    for (std::size_t g = 0; g < list.size(); ++g) {
      const PostId p = list[g][0];
      const int rank = static_cast<int>(g) + 1;
      by_app[a].push_back({p, rank, by_post[p].size()});
      by_post[p].push_back({static_cast<ApplicantId>(a), rank});
    }
  }

  // Phase 1: a post is an f-post iff some incident edge has rank 1.
  auto is_f = engine.map("reduce", num_posts, [&](std::size_t p) {
    for (const auto& e : by_post[p]) {
      if (e.rank == 1) {
        return std::uint8_t{1};
      }
    }
    return std::uint8_t{0};
  });

  // Phase 2: f-posts drop every incident edge of rank > 1.
  auto kept = engine.map("reduce", num_posts, [&](std::size_t p) {
    std::vector<std::uint8_t> keep(by_post[p].size(), 1);
    if (is_f[p]) {
      for (std::size_t i = 0; i < by_post[p].size(); ++i) {
        keep[i] = by_post[p][i].rank == 1;
      }
    }
    return keep;
  });

  // Phase 3: per applicant, the best surviving edge outside rank 1 is s(a).
  struct Pair {
    PostId f = kNoPost;
    PostId s = kNoPost;
  };
  auto pairs = engine.map("reduce", num_apps, [&](std::size_t a) {
    Pair out;
    int best = 0;
    for (const auto& e : by_app[a]) {
      if (e.rank == 1) {
        out.f = e.post;
      } else if (kept[e.post][e.slot] && (best == 0 || e.rank < best)) {
        best = e.rank;
        out.s = e.post;
      }
    }
    return out;
  });

  std::vector<PostId> f(num_apps);
  std::vector<PostId> s(num_apps);
  for (std::size_t a = 0; a < num_apps; ++a) {
    if (pairs[a].f == kNoPost || pairs[a].s == kNoPost) {
      throw InvariantError("applicant without f(a) or s(a)");
    }
    f[a] = pairs[a].f;
    s[a] = pairs[a].s;
  }
  ReducedGraph g;
  g.num_real_posts = inst.num_posts();
  g.num_total_posts = num_posts;
  g.is_f_post = std::move(is_f);
  g.is_s_post = engine.map("reduce", num_posts, [&](std::size_t p) {
    for (const auto& e : by_post[p]) {
      if (s[e.applicant] == static_cast<PostId>(p)) {
        return std::uint8_t{1};
      }
    }
    return std::uint8_t{0};
  });
  g.degree = engine.map("reduce", num_posts, [&](std::size_t p) {
    std::int32_t d = 0;
    for (const auto& e : by_post[p]) {
      const auto a = static_cast<std::size_t>(e.applicant);
      if (f[a] == static_cast<PostId>(p) || s[a] == static_cast<PostId>(p)) {
        ++d;
      }
    }
    return d;
  });
  g.f = std::move(f);
  g.s = std::move(s);
  return g;
}

} // namespace popmatch
