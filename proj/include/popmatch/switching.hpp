#ifndef POPMATCH_SWITCHING_HPP
#define POPMATCH_SWITCHING_HPP

#include "popmatch/instance.hpp"
#include "popmatch/reduce.hpp"
#include "popmatch/rounds.hpp"

#include <optional>
#include <span>
#include <vector>

namespace popmatch {

/// Switching graph of a popular matching M: one vertex per post of G' and,
/// for every applicant a, an edge M(a) -> O_M(a) labelled a, where O_M(a) is
/// the other post on a's reduced list. Every vertex has out-degree <= 1.
struct SwitchingGraph {
  std::size_t num_real_posts = 0;
  std::size_t num_total_posts = 0;
  // Posts with at least one reduced edge, ascending.
  std::vector<PostId> vertices;
  // Indexed by post id; kNoPost / kNoApplicant / 0 off the vertex set.
  std::vector<PostId> out;
  std::vector<ApplicantId> edge_label;
  std::vector<std::uint8_t> is_sink;
  std::vector<std::uint8_t> is_s_post;
  // Weak component label: the smallest post id in the component.
  std::vector<PostId> component;

  bool contains(PostId p) const {
    return p >= 0 && static_cast<std::size_t>(p) < component.size() &&
           component[p] != kNoPost;
  }
  /// Ascending distinct component labels.
  std::vector<PostId> component_labels() const;
  std::vector<PostId> component_vertices(PostId label) const;
  /// The sink of a tree component, or kNoPost for a cycle component.
  PostId sink_of(PostId label) const;
};

enum class MoveKind { Cycle, Path };

struct SwitchEdge {
  ApplicantId applicant;
  PostId from;
  PostId to;
  bool operator==(const SwitchEdge&) const = default;
};

/// A switching cycle or switching path: every listed applicant moves from
/// `from` to `to`. Cycles start at their smallest post; paths start at a
/// non-sink s-post and end at the component's sink.
struct SwitchMove {
  MoveKind kind = MoveKind::Path;
  std::vector<SwitchEdge> edges;
  int margin = 0;

  PostId source() const { return edges.empty() ? kNoPost : edges.front().from; }
  bool operator==(const SwitchMove&) const = default;
};

struct SwitchComponent {
  PostId label = kNoPost;
  std::vector<PostId> vertices;
  PostId sink = kNoPost;
  std::optional<SwitchMove> cycle;
  std::vector<SwitchMove> paths;

  bool is_tree() const { return sink != kNoPost; }
};

/// Throws Error if `m` does not satisfy the popular-matching characterization
/// with respect to `g`.
SwitchingGraph build_switching_graph(const ReducedGraph& g, const Matching& m,
                                     RoundEngine& engine = default_engine());

/// The unique cycle of every cycle component, via mutual reachability in the
/// transitive closure. Ordered by smallest post.
std::vector<SwitchMove> find_cycles(const SwitchingGraph& sg,
                                    RoundEngine& engine = default_engine());

/// Switching paths of the tree component labelled `component`: for each
/// non-sink s-post q, a copy of the component gets the edge sink -> q and the
/// closure exposes the cycle through q. All copies are closed in lockstep.
std::vector<SwitchMove> find_switching_paths(
    const SwitchingGraph& sg, PostId component,
    RoundEngine& engine = default_engine());

/// Every component with its cycle or its switching paths.
std::vector<SwitchComponent> decompose(const SwitchingGraph& sg,
                                       RoundEngine& engine = default_engine());

/// Net change in the number of applicants on real posts.
int margin(const SwitchMove& move, const PrefInstance& inst);

/// Throws Error when the move does not start from `m`.
Matching apply_move(const Matching& m, const SwitchMove& move);
/// Applies vertex-disjoint moves together.
Matching apply_moves(const Matching& m, std::span<const SwitchMove> moves);

/// Every matching reachable from the popular matching `m` by choosing, per
/// component, nothing or one of its moves. Throws Error if more than `cap`
/// combinations exist. Result sorted.
std::vector<Matching> popular_matchings_by_switching(
    const ReducedGraph& g, const Matching& m, std::size_t cap = 1'000'000,
    RoundEngine& engine = default_engine());

} // namespace popmatch

#endif // POPMATCH_SWITCHING_HPP
