#ifndef POPMATCH_REDUCE_HPP
#define POPMATCH_REDUCE_HPP

#include "popmatch/instance.hpp"
#include "popmatch/rounds.hpp"

#include <cstdint>
#include <vector>

namespace popmatch {

/// The reduced graph G': each applicant keeps exactly two edges, to its first
/// choice f(a) and to s(a), the best post on its list that is nobody's first
/// choice.
struct ReducedGraph {
  std::size_t num_real_posts = 0;
  std::size_t num_total_posts = 0;
  std::vector<PostId> f;
  std::vector<PostId> s;
  std::vector<std::uint8_t> is_f_post;
  std::vector<std::uint8_t> is_s_post;
  std::vector<std::int32_t> degree;

  std::size_t num_applicants() const { return f.size(); }
  bool is_last_resort(PostId p) const {
    return static_cast<std::size_t>(p) >= num_real_posts;
  }
  /// The post on a's reduced list that is not `p`.
  PostId other(ApplicantId a, PostId p) const { return f[a] == p ? s[a] : f[a]; }

  std::vector<PostId> f_posts() const;
  std::vector<PostId> s_posts() const;
  /// Applicants whose first choice is `p`, ascending.
  std::vector<ApplicantId> f_inverse(PostId p) const;
  /// Number of posts with at least one reduced edge.
  std::size_t num_used_posts() const;

  /// Builds a graph from explicit (f, s) pairs; flags and degrees derived.
  static ReducedGraph from_pairs(std::size_t num_real_posts,
                                 std::size_t num_total_posts,
                                 std::vector<PostId> f, std::vector<PostId> s);
};

/// Requires a strict instance with last resort posts; throws Error otherwise.
ReducedGraph reduce(const PrefInstance& inst,
                    RoundEngine& engine = default_engine());

} // namespace popmatch

#endif // POPMATCH_REDUCE_HPP
