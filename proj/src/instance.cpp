#include "popmatch/instance.hpp"

#include <algorithm>
#include <string>

namespace popmatch {

PrefInstance::PrefInstance(std::size_t num_posts, std::vector<PrefList> lists,
                           bool add_last_resort)
    : num_posts_(num_posts), last_resort_(add_last_resort),
      lists_(std::move(lists)) {
  ranks_.resize(lists_.size());
  for (std::size_t a = 0; a < lists_.size(); ++a) {
    auto& list = lists_[a];
    if (list.empty()) {
      throw Error("applicant a" + std::to_string(a + 1) + " has an empty list");
    }
    auto& ranks = ranks_[a];
    for (std::size_t g = 0; g < list.size(); ++g) {
      if (list[g].empty()) {
        throw Error("applicant a" + std::to_string(a + 1) +
                    " has an empty rank group");
      }
      if (list[g].size() > 1) {
        strict_ = false;
      }
      for (PostId p : list[g]) {
        if (p < 0 || static_cast<std::size_t>(p) >= num_posts_) {
          throw Error("post id out of range on list of a" +
                      std::to_string(a + 1));
        }
        ranks.emplace_back(p, static_cast<int>(g) + 1);
      }
    }
    if (last_resort_) {
      PostId l = last_resort(static_cast<ApplicantId>(a));
      list.push_back({l});
      ranks.emplace_back(l, static_cast<int>(list.size()));
    }
    std::sort(ranks.begin(), ranks.end());
    auto dup = std::adjacent_find(
        ranks.begin(), ranks.end(),
        [](const auto& x, const auto& y) { return x.first == y.first; });
    if (dup != ranks.end()) {
      throw Error("post p" + std::to_string(dup->first + 1) +
                  " appears twice on list of a" + std::to_string(a + 1));
    }
  }
}

int PrefInstance::rank(ApplicantId a, PostId p) const {
  const auto& ranks = ranks_[a];
  auto it = std::lower_bound(ranks.begin(), ranks.end(),
                             std::pair<PostId, int>{p, 0});
  if (it == ranks.end() || it->first != p) {
    return 0;
  }
  return it->second;
}

bool PrefInstance::prefers(ApplicantId a, PostId p, PostId q) const {
  if (p == kNoPost) {
    return false;
  }
  if (q == kNoPost) {
    return true;
  }
  return rank(a, p) < rank(a, q);
}

std::vector<PrefList> PrefInstance::real_lists() const {
  std::vector<PrefList> out = lists_;
  if (last_resort_) {
    for (auto& l : out) {
      l.pop_back();
    }
  }
  return out;
}

Matching::Matching(std::size_t num_applicants, std::size_t num_real_posts,
                   std::size_t num_total_posts)
    : num_real_posts_(num_real_posts), post_of_(num_applicants, kNoPost),
      owner_(num_total_posts, kNoApplicant) {}

void Matching::assign(ApplicantId a, PostId p) {
  if (a < 0 || static_cast<std::size_t>(a) >= post_of_.size() || p < 0 ||
      static_cast<std::size_t>(p) >= owner_.size()) {
    throw Error("assignment out of range");
  }
  if (post_of_[a] != kNoPost) {
    throw Error("applicant a" + std::to_string(a + 1) + " already matched");
  }
  if (owner_[p] != kNoApplicant) {
    throw Error("post p" + std::to_string(p + 1) + " already matched");
  }
  post_of_[a] = p;
  owner_[p] = a;
}

void Matching::unassign(ApplicantId a) {
  PostId p = post_of_[a];
  if (p != kNoPost) {
    owner_[p] = kNoApplicant;
    post_of_[a] = kNoPost;
  }
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(post_of_.begin(), post_of_.end(), [&](PostId p) {
        return p != kNoPost && static_cast<std::size_t>(p) < num_real_posts_;
      }));
}

std::size_t Matching::pair_count() const {
  return static_cast<std::size_t>(
      std::count_if(post_of_.begin(), post_of_.end(),
                    [](PostId p) { return p != kNoPost; }));
}

bool Matching::applicant_complete() const {
  return std::none_of(post_of_.begin(), post_of_.end(),
                      [](PostId p) { return p == kNoPost; });
}

Matching complete_with_last_resort(const Matching& m,
                                   const PrefInstance& inst) {
  if (!inst.has_last_resort()) {
    throw Error("instance has no last resort posts");
  }
  Matching out = m;
  for (std::size_t a = 0; a < inst.num_applicants(); ++a) {
    auto id = static_cast<ApplicantId>(a);
    if (!out.is_matched(id)) {
      out.assign(id, inst.last_resort(id));
    }
  }
  return out;
}

bool consistent_with(const Matching& m, const PrefInstance& inst) {
  if (m.num_applicants() != inst.num_applicants() ||
      m.num_total_posts() != inst.num_total_posts()) {
    return false;
  }
  for (std::size_t a = 0; a < m.num_applicants(); ++a) {
    PostId p = m.post_of(static_cast<ApplicantId>(a));
    if (p != kNoPost && inst.rank(static_cast<ApplicantId>(a), p) == 0) {
      return false;
    }
  }
  return true;
}

BipartiteGraph::BipartiteGraph(
    std::size_t left, std::size_t right,
    std::vector<std::pair<std::int32_t, std::int32_t>> edges)
    : right_(right), edges_(std::move(edges)), adj_(left) {
  for (auto [u, v] : edges_) {
    if (u < 0 || static_cast<std::size_t>(u) >= left || v < 0 ||
        static_cast<std::size_t>(v) >= right) {
      throw Error("edge endpoint out of range");
    }
    adj_[u].push_back(v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error("duplicate edge");
  }
  for (auto& n : adj_) {
    std::sort(n.begin(), n.end());
  }
}

bool BipartiteGraph::has_edge(std::int32_t u, std::int32_t v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

} // namespace popmatch
