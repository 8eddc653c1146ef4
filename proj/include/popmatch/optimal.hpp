#ifndef POPMATCH_OPTIMAL_HPP
#define POPMATCH_OPTIMAL_HPP

#include "popmatch/instance.hpp"
#include "popmatch/rounds.hpp"
#include "popmatch/switching.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace popmatch {

/// x[k-1] counts applicants on their k-th ranked post for k <= n2; the last
/// slot (index n2) counts applicants on their last resort post.
struct Profile {
  std::vector<std::int64_t> x;
  bool operator==(const Profile&) const = default;
};

/// Unmatched applicants count as being on their last resort post.
Profile profile_of(const Matching& m, const PrefInstance& inst);

/// a ≻_R b: first differing slot from the front is larger in a.
bool rank_maximal_better(const Profile& a, const Profile& b);
/// a ≺_F b: first differing slot from the back is smaller in a.
bool fair_better(const Profile& a, const Profile& b);

/// Weight of the pair (a, p), or nullopt if the caller has no weight for it.
/// Called for last resort posts too.
using WeightFn = std::function<std::optional<std::int64_t>(ApplicantId, PostId)>;

enum class Criterion { MaxWeight, MinWeight, RankMaximal, Fair };

/// Maximum-cardinality popular matching: per tree component the path with the
/// largest positive margin is applied; cycles never change the size. Throws
/// Error if `m` is not popular.
Matching max_cardinality(const PrefInstance& inst, const Matching& m,
                         RoundEngine& engine = default_engine());

/// Optimal popular matching reached from the popular matching `m` by choosing
/// the best move (or none) per switching-graph component. Ties prefer no move,
/// then the smallest source post. `weight` is required for the weight
/// criteria; a missing pair throws Error.
Matching optimal_popular(const PrefInstance& inst, const Matching& m,
                         Criterion criterion, const WeightFn& weight = {},
                         RoundEngine& engine = default_engine());

} // namespace popmatch

#endif // POPMATCH_OPTIMAL_HPP
