#ifndef POPMATCH_INSTANCE_HPP
#define POPMATCH_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace popmatch {

// Applicants and posts are dense 0-based indices. Real posts occupy
// [0, num_posts); the last resort post of applicant a is num_posts + a.
using ApplicantId = std::int32_t;
using PostId = std::int32_t;

inline constexpr PostId kNoPost = -1;
inline constexpr ApplicantId kNoApplicant = -1;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal algorithm invariant does not hold. Indicates a bug,
// never bad user input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A rank group is a non-empty set of posts the applicant is indifferent
// between. A preference list is an ordered sequence of rank groups.
using RankGroup = std::vector<PostId>;
using PrefList = std::vector<RankGroup>;

/// One-sided preference instance: applicants rank (possibly tied) subsets of
/// posts. When built with last resorts, every list ends with a singleton group
/// holding the applicant's private last resort post.
class PrefInstance {
public:
  PrefInstance() = default;

  /// Validates and stores `lists` (one per applicant, real posts only).
  /// Throws Error on empty lists, empty groups, duplicates or out-of-range ids.
  PrefInstance(std::size_t num_posts, std::vector<PrefList> lists,
               bool add_last_resort = true);

  std::size_t num_applicants() const { return lists_.size(); }
  std::size_t num_posts() const { return num_posts_; }
  std::size_t num_total_posts() const {
    return num_posts_ + (last_resort_ ? lists_.size() : 0);
  }
  bool has_last_resort() const { return last_resort_; }
  bool strict() const { return strict_; }

  PostId last_resort(ApplicantId a) const {
    return static_cast<PostId>(num_posts_) + a;
  }
  bool is_last_resort(PostId p) const {
    return p >= static_cast<PostId>(num_posts_);
  }

  /// Full list of `a`, including the trailing last resort group if present.
  const PrefList& list(ApplicantId a) const { return lists_[a]; }

  /// 1-based rank group index of `p` on a's list, or 0 if absent.
  int rank(ApplicantId a, PostId p) const;

  /// Strict preference of `a` for `p` over `q`. kNoPost (unmatched) is worse
  /// than every post on the list.
  bool prefers(ApplicantId a, PostId p, PostId q) const;

  /// The lists without the synthetic last resort group.
  std::vector<PrefList> real_lists() const;

  bool operator==(const PrefInstance&) const = default;

private:
  std::size_t num_posts_ = 0;
  bool last_resort_ = false;
  bool strict_ = true;
  std::vector<PrefList> lists_;
  // Per applicant, (post, rank) sorted by post.
  std::vector<std::vector<std::pair<PostId, int>>> ranks_;
};

/// Partial assignment of applicants to posts. Size counts only pairs whose
/// post is real (below `num_real_posts`).
class Matching {
public:
  Matching() = default;
  Matching(std::size_t num_applicants, std::size_t num_real_posts,
           std::size_t num_total_posts);

  static Matching for_instance(const PrefInstance& inst) {
    return Matching(inst.num_applicants(), inst.num_posts(),
                    inst.num_total_posts());
  }

  std::size_t num_applicants() const { return post_of_.size(); }
  std::size_t num_total_posts() const { return owner_.size(); }
  std::size_t num_real_posts() const { return num_real_posts_; }

  PostId post_of(ApplicantId a) const { return post_of_[a]; }
  ApplicantId applicant_of(PostId p) const { return owner_[p]; }
  bool is_matched(ApplicantId a) const { return post_of_[a] != kNoPost; }
  bool post_matched(PostId p) const { return owner_[p] != kNoApplicant; }

  /// Throws Error if `a` already holds a post or `p` is taken.
  void assign(ApplicantId a, PostId p);
  void unassign(ApplicantId a);

  std::size_t size() const;
  std::size_t pair_count() const;
  bool applicant_complete() const;

  const std::vector<PostId>& assignment() const { return post_of_; }

  bool operator==(const Matching& other) const {
    return post_of_ == other.post_of_ &&
           num_real_posts_ == other.num_real_posts_;
  }
  auto operator<=>(const Matching& other) const {
    return post_of_ <=> other.post_of_;
  }

private:
  std::size_t num_real_posts_ = 0;
  std::vector<PostId> post_of_;
  std::vector<ApplicantId> owner_;
};

/// Every unmatched applicant is placed on its last resort post.
Matching complete_with_last_resort(const Matching& m, const PrefInstance& inst);

/// True iff every pair of `m` uses a post from the applicant's list.
bool consistent_with(const Matching& m, const PrefInstance& inst);

/// Simple bipartite graph with left vertices [0, left) and right [0, right).
class BipartiteGraph {
public:
  BipartiteGraph() = default;
  /// Duplicate edges are rejected; out-of-range endpoints throw Error.
  BipartiteGraph(std::size_t left, std::size_t right,
                 std::vector<std::pair<std::int32_t, std::int32_t>> edges);

  std::size_t left_count() const { return adj_.size(); }
  std::size_t right_count() const { return right_; }
  std::span<const std::pair<std::int32_t, std::int32_t>> edges() const {
    return edges_;
  }
  std::span<const std::int32_t> neighbors(std::int32_t u) const {
    return adj_[u];
  }
  bool has_edge(std::int32_t u, std::int32_t v) const;

private:
  std::size_t right_ = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges_;
  std::vector<std::vector<std::int32_t>> adj_;
};

} // namespace popmatch

#endif // POPMATCH_INSTANCE_HPP
