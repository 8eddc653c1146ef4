#include "popmatch/ties.hpp"

#include "popmatch/oracles.hpp"

#include <algorithm>
#include <functional>

namespace popmatch {

PrefInstance build_ties_instance(const BipartiteGraph& g) {
  std::vector<PrefList> lists;
  for (std::size_t u = 0; u < g.left_count(); ++u) {
    const auto nb = g.neighbors(static_cast<std::int32_t>(u));
    if (nb.empty()) {
      throw Error("left vertex " + std::to_string(u + 1) + " has no neighbours");
    }
    RankGroup group(nb.begin(), nb.end());
    std::sort(group.begin(), group.end());
    lists.push_back({std::move(group)});
  }
  return PrefInstance(g.right_count(), std::move(lists), false);
}

Matching maximum_matching(const BipartiteGraph& g) {
  Matching m(g.left_count(), g.right_count(), g.right_count());
  std::vector<std::uint8_t> visited;
  std::function<bool(std::int32_t)> augment = [&](std::int32_t u) {
    for (std::int32_t v : g.neighbors(u)) {
      if (visited[v]) {
        continue;
      }
      visited[v] = 1;
      const ApplicantId owner = m.applicant_of(v);
      // A successful recursive call has already moved `owner` off v.
      if (owner == kNoApplicant || augment(owner)) {
        if (m.is_matched(u)) {
          m.unassign(u);
        }
        m.assign(u, v);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < g.left_count(); ++u) {
    visited.assign(g.right_count(), 0);
    augment(static_cast<std::int32_t>(u));
  }
  return m;
}

EquivalenceReport check_equivalence(const BipartiteGraph& g, std::size_t cap) {
  // Isolated left vertices cannot be applicants; they never affect either
  // side of the comparison, so they are dropped.
  std::vector<std::int32_t> keep_id(g.left_count(), -1);
  std::size_t kept = 0;
  for (std::size_t u = 0; u < g.left_count(); ++u) {
    if (!g.neighbors(static_cast<std::int32_t>(u)).empty()) {
      keep_id[u] = static_cast<std::int32_t>(kept++);
    }
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(keep_id[u], v);
  }
  const BipartiteGraph h(kept, g.right_count(), std::move(edges));
  const PrefInstance inst = build_ties_instance(h);
  const auto all = enumerate_matchings(inst, false, cap);

  EquivalenceReport report;
  report.matchings = all.size();
  report.max_size = maximum_matching(h).size();
  const std::size_t n = all.size();
  std::vector<std::size_t> beaten(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto pij = static_cast<long>(prefer_count(inst, all[i], all[j]));
      const auto pji = static_cast<long>(prefer_count(inst, all[j], all[i]));
      const auto si = static_cast<long>(all[i].size());
      const auto sj = static_cast<long>(all[j].size());
      report.identity_violations += (pji - pij != sj - si);
      report.identity_violations += (pij - pji != si - sj);
      beaten[i] += pji > pij;
      beaten[j] += pij > pji;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool popular = beaten[i] == 0;
    const bool maximum = all[i].size() == report.max_size;
    report.popular += popular;
    report.maximum += maximum;
    if (popular != maximum && report.holds) {
      report.holds = false;
      Matching orig(g.left_count(), g.right_count(), g.right_count());
      for (std::size_t u = 0; u < g.left_count(); ++u) {
        if (keep_id[u] >= 0 && all[i].is_matched(keep_id[u])) {
          orig.assign(static_cast<ApplicantId>(u), all[i].post_of(keep_id[u]));
        }
      }
      report.counterexample = std::move(orig);
      report.reason = popular ? "popular matching is not maximum"
                              : "maximum matching is not popular";
    }
  }
  if (report.identity_violations > 0 && report.holds) {
    report.holds = false;
    report.reason = "vote difference differs from size difference";
  }
  return report;
}

} // namespace popmatch
