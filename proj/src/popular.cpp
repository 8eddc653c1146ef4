#include "popmatch/popular.hpp"

namespace popmatch {

PopularOutcome solve_popular(const PrefInstance& inst, RoundEngine& engine) {
  PopularOutcome out;
  out.reduced = reduce(inst, engine);
  out.acm = applicant_complete(out.reduced, engine);
  if (out.acm.matching) {
    out.matching = promote_unmatched_fposts(*out.acm.matching, out.reduced,
                                            engine);
  }
  return out;
}

Matching promote_unmatched_fposts(const Matching& m, const ReducedGraph& g,
                                  RoundEngine& engine) {
  const std::size_t num_apps = g.num_applicants();
  // f^{-1} lists are disjoint, so each applicant is considered by at most one
  // f-post and all promotions commit together.
  std::vector<std::vector<ApplicantId>> f_inv(g.num_total_posts);
  for (std::size_t a = 0; a < num_apps; ++a) {
    f_inv[g.f[a]].push_back(static_cast<ApplicantId>(a));
  }
  auto promoted = engine.map("promote", g.num_total_posts, [&](std::size_t p) {
    if (!g.is_f_post[p] || m.post_matched(static_cast<PostId>(p))) {
      return kNoApplicant;
    }
    for (ApplicantId a : f_inv[p]) {
      if (m.post_of(a) == g.s[a]) {
        return a;
      }
    }
    throw InvariantError("unmatched f-post without a promotable applicant");
  });
  Matching out = m;
  for (std::size_t p = 0; p < promoted.size(); ++p) {
    if (promoted[p] != kNoApplicant) {
      out.unassign(promoted[p]);
      out.assign(promoted[p], static_cast<PostId>(p));
    }
  }
  return out;
}

PopularityReport is_popular(const Matching& m, const PrefInstance& inst) {
  return is_popular(m, inst, reduce(inst));
}

PopularityReport is_popular(const Matching& m, const PrefInstance& inst,
                            const ReducedGraph& g) {
  if (!consistent_with(m, inst)) {
    throw Error("matching is inconsistent with the instance");
  }
  const Matching full = complete_with_last_resort(m, inst);
  PopularityReport report;
  for (PostId p : g.f_posts()) {
    if (!full.post_matched(p)) {
      report.unmatched_f_posts.push_back(p);
    }
  }
  for (std::size_t a = 0; a < full.num_applicants(); ++a) {
    const PostId p = full.post_of(static_cast<ApplicantId>(a));
    if (p != g.f[a] && p != g.s[a]) {
      report.misplaced_applicants.push_back(static_cast<ApplicantId>(a));
    }
  }
  report.popular =
      report.unmatched_f_posts.empty() && report.misplaced_applicants.empty();
  return report;
}

} // namespace popmatch
