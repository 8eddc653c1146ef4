#ifndef POPMATCH_POPULAR_HPP
#define POPMATCH_POPULAR_HPP

#include "popmatch/applicant_complete.hpp"
#include "popmatch/instance.hpp"
#include "popmatch/reduce.hpp"
#include "popmatch/rounds.hpp"

#include <optional>
#include <vector>

namespace popmatch {

struct PopularOutcome {
  std::optional<Matching> matching;
  ReducedGraph reduced;
  AcmResult acm;

  explicit operator bool() const { return matching.has_value(); }
};

/// Popular matching of a strict instance, or an empty outcome when none
/// exists. Throws Error for instances with ties.
PopularOutcome solve_popular(const PrefInstance& inst,
                             RoundEngine& engine = default_engine());

/// Moves, in one round, the smallest applicant of f^{-1}(p) currently on its
/// s-post onto every unmatched f-post p.
Matching promote_unmatched_fposts(const Matching& m, const ReducedGraph& g,
                                  RoundEngine& engine = default_engine());

struct PopularityReport {
  bool popular = false;
  // f-posts left unmatched.
  std::vector<PostId> unmatched_f_posts;
  // Applicants matched outside {f(a), s(a)}.
  std::vector<ApplicantId> misplaced_applicants;
};

/// Characterization check on a strict instance: every f-post is matched and
/// every applicant holds f(a) or s(a). Unmatched applicants are first placed
/// on their last resort posts.
PopularityReport is_popular(const Matching& m, const PrefInstance& inst);
PopularityReport is_popular(const Matching& m, const PrefInstance& inst,
                            const ReducedGraph& g);

} // namespace popmatch

#endif // POPMATCH_POPULAR_HPP
