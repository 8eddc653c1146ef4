#ifndef POPMATCH_APPLICANT_COMPLETE_HPP
#define POPMATCH_APPLICANT_COMPLETE_HPP

#include "popmatch/instance.hpp"
#include "popmatch/reduce.hpp"
#include "popmatch/rounds.hpp"

#include <optional>
#include <span>
#include <vector>

namespace popmatch {

/// A maximal path v0, v1, ..., v_{k+1} whose interior vertices all have
/// degree 2 and whose source v0 is a degree-1 post. Posts and applicants
/// alternate: posts = (v0, v2, ..., v_{k+1}), applicants = (v1, v3, ..., v_k).
struct PeelPath {
  std::vector<PostId> posts;
  std::vector<ApplicantId> applicants;

  PostId source() const { return posts.front(); }
  PostId end() const { return posts.back(); }
};

/// Working state of the peeling loop over a reduced graph.
struct PeelState {
  const ReducedGraph* graph = nullptr;
  std::vector<std::uint8_t> alive_applicant;
  std::vector<std::uint8_t> alive_post;
  std::vector<std::int32_t> degree;
  std::vector<std::vector<ApplicantId>> post_adj;
  Matching matched;
  std::size_t round_index = 0;

  static PeelState initial(const ReducedGraph& g);
};

/// Hall certificate: the residual graph has fewer posts than applicants.
struct HallViolation {
  std::vector<ApplicantId> applicants;
  std::vector<PostId> posts;
};

struct AcmResult {
  std::optional<Matching> matching;
  std::optional<HallViolation> violation;
  std::size_t peel_rounds = 0;
  std::size_t vertex_count = 0;
  // Pairs fixed by the peeling loop, before the cycle phase.
  Matching peeled;
  // Applicants left on even cycles after peeling.
  std::vector<ApplicantId> residual_applicants;

  explicit operator bool() const { return matching.has_value(); }
};

/// Applicant-complete matching of the reduced graph via degree-1 peeling and
/// alternation on the leftover even cycles. Round count is reported in phase
/// "acm.peel".
AcmResult applicant_complete(const ReducedGraph& g,
                             RoundEngine& engine = default_engine());

/// All peel paths of the current round, ordered by source post. When both ends
/// have degree 1 the smaller post id is the source.
std::vector<PeelPath> find_maximal_deg2_paths(
    const PeelState& state, RoundEngine& engine = default_engine());

/// Perfect matching of the 2-regular subgraph spanned by `applicants` and their
/// f/s edges. In each cycle the smallest applicant takes its f-post and the
/// rest alternate. Throws InvariantError if the subgraph is not 2-regular.
Matching cycle_perfect_matching(const ReducedGraph& g,
                                std::span<const ApplicantId> applicants,
                                RoundEngine& engine = default_engine());

} // namespace popmatch

#endif // POPMATCH_APPLICANT_COMPLETE_HPP
