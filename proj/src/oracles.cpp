#include "popmatch/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace popmatch {

namespace {

void check_limits(const PrefInstance& inst) {
  if (inst.num_applicants() > kOracleMaxApplicants ||
      inst.num_total_posts() > kOracleMaxTotalPosts) {
    throw Error("instance too large for the exhaustive oracle (" +
                std::to_string(inst.num_applicants()) + " applicants, " +
                std::to_string(inst.num_total_posts()) + " posts)");
  }
}

// Candidate posts of applicant a, best first.
std::vector<PostId> candidates(const PrefInstance& inst, ApplicantId a) {
  std::vector<PostId> out;
  for (const auto& group : inst.list(a)) {
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

// Vote of applicant a for post p over post q: +1, 0 or -1.
int vote(const PrefInstance& inst, ApplicantId a, PostId p, PostId q) {
  if (inst.prefers(a, p, q)) {
    return 1;
  }
  return inst.prefers(a, q, p) ? -1 : 0;
}

} // namespace

std::size_t prefer_count(const PrefInstance& inst, const Matching& x,
                         const Matching& y) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < inst.num_applicants(); ++a) {
    const auto id = static_cast<ApplicantId>(a);
    count += inst.prefers(id, x.post_of(id), y.post_of(id)) ? 1 : 0;
  }
  return count;
}

bool more_popular(const PrefInstance& inst, const Matching& x,
                  const Matching& y) {
  return prefer_count(inst, x, y) > prefer_count(inst, y, x);
}

std::vector<Matching> enumerate_matchings(const PrefInstance& inst,
                                          bool complete, std::size_t cap) {
  check_limits(inst);
  const std::size_t n = inst.num_applicants();
  std::vector<std::vector<PostId>> cand(n);
  for (std::size_t a = 0; a < n; ++a) {
    cand[a] = candidates(inst, static_cast<ApplicantId>(a));
  }
  std::vector<Matching> out;
  Matching cur = Matching::for_instance(inst);
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == n) {
      if (out.size() == cap) {
        throw Error("more than " + std::to_string(cap) + " matchings");
      }
      out.push_back(cur);
      return;
    }
    const auto id = static_cast<ApplicantId>(a);
    if (!complete) {
      rec(a + 1);
    }
    for (PostId p : cand[a]) {
      if (!cur.post_matched(p)) {
        cur.assign(id, p);
        rec(a + 1);
        cur.unassign(id);
      }
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Matching> more_popular_witness(const PrefInstance& inst,
                                             const Matching& m,
                                             bool complete) {
  check_limits(inst);
  if (!consistent_with(m, inst)) {
    throw Error("matching is inconsistent with the instance");
  }
  const Matching base =
      complete && inst.has_last_resort() ? complete_with_last_resort(m, inst) : m;
  const std::size_t n = inst.num_applicants();
  std::vector<std::vector<PostId>> cand(n);
  // gain_left[a]: applicants >= a who could still vote for the witness.
  std::vector<int> gain_left(n + 1, 0);
  for (std::size_t a = n; a-- > 0;) {
    const auto id = static_cast<ApplicantId>(a);
    cand[a] = candidates(inst, id);
    bool can_gain = false;
    for (PostId p : cand[a]) {
      can_gain = can_gain || vote(inst, id, p, base.post_of(id)) > 0;
    }
    gain_left[a] = gain_left[a + 1] + (can_gain ? 1 : 0);
  }

  Matching cur = Matching::for_instance(inst);
  std::optional<Matching> found;
  std::function<void(std::size_t, int)> rec = [&](std::size_t a, int score) {
    if (found || score + gain_left[a] <= 0) {
      return;
    }
    if (a == n) {
      found = cur;
      return;
    }
    const auto id = static_cast<ApplicantId>(a);
    for (PostId p : cand[a]) {
      if (!cur.post_matched(p)) {
        cur.assign(id, p);
        rec(a + 1, score + vote(inst, id, p, base.post_of(id)));
        cur.unassign(id);
      }
    }
    if (!complete) {
      rec(a + 1, score + vote(inst, id, kNoPost, base.post_of(id)));
    }
  };
  rec(0, 0);
  return found;
}

bool brute_force_popular(const PrefInstance& inst, const Matching& m,
                         bool complete) {
  return !more_popular_witness(inst, m, complete);
}

std::vector<Matching> enumerate_popular(const PrefInstance& inst,
                                        bool complete) {
  std::vector<Matching> out;
  for (auto& m : enumerate_matchings(inst, complete)) {
    if (brute_force_popular(inst, m, complete)) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<StableMatching> enumerate_stable(const StableInstance& inst) {
  if (inst.size() > kOracleMaxStableSize) {
    throw Error("stable instance too large for the exhaustive oracle");
  }
  std::vector<WomanId> wife(inst.size());
  std::iota(wife.begin(), wife.end(), 0);
  std::vector<StableMatching> out;
  do {
    StableMatching m(wife);
    if (is_stable(inst, m)) {
      out.push_back(std::move(m));
    }
  } while (std::next_permutation(wife.begin(), wife.end()));
  return out;
}

std::vector<Rotation> exposed_rotations_exhaustive(const StableInstance& inst,
                                                   const StableMatching& m) {
  if (inst.size() > kOracleMaxStableSize) {
    throw Error("stable instance too large for the exhaustive oracle");
  }
  const auto n = static_cast<ManId>(inst.size());
  std::vector<Rotation> out;
  Rotation cur;
  std::vector<bool> used(inst.size(), false);
  std::function<void()> rec = [&] {
    if (cur.size() >= 2 && is_exposed_rotation(inst, m, cur)) {
      out.push_back(cur);
    }
    for (ManId x = cur.front().first + 1; x < n; ++x) {
      if (!used[x]) {
        used[x] = true;
        cur.emplace_back(x, m.wife(x));
        rec();
        cur.pop_back();
        used[x] = false;
      }
    }
  };
  for (ManId start = 0; start < n; ++start) {
    cur = {{start, m.wife(start)}};
    used.assign(inst.size(), false);
    used[start] = true;
    rec();
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace popmatch
