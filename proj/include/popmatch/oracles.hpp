#ifndef POPMATCH_ORACLES_HPP
#define POPMATCH_ORACLES_HPP

#include "popmatch/instance.hpp"
#include "popmatch/stable.hpp"

#include <optional>
#include <vector>

namespace popmatch {

// Exhaustive reference implementations for small instances. Exceeding a limit
// throws Error; nothing is silently truncated.

inline constexpr std::size_t kOracleMaxApplicants = 10;
inline constexpr std::size_t kOracleMaxTotalPosts = 20;
inline constexpr std::size_t kOracleMaxMatchings = 2'000'000;
inline constexpr std::size_t kOracleMaxStableSize = 8;

/// |P(x, y)|: applicants who prefer their post in x to their post in y.
/// Being unmatched is worse than any post.
std::size_t prefer_count(const PrefInstance& inst, const Matching& x,
                         const Matching& y);
/// x ≻ y: more applicants prefer x than prefer y.
bool more_popular(const PrefInstance& inst, const Matching& x,
                  const Matching& y);

/// Every matching of `inst`, sorted. With `complete` every applicant must be
/// matched; otherwise applicants may stay unmatched.
std::vector<Matching> enumerate_matchings(const PrefInstance& inst,
                                          bool complete,
                                          std::size_t cap = kOracleMaxMatchings);

/// A matching more popular than `m` among those enumerate_matchings would
/// produce, or nullopt if `m` is popular. With `complete`, `m` is first
/// completed with last resort posts.
std::optional<Matching> more_popular_witness(const PrefInstance& inst,
                                             const Matching& m, bool complete);
bool brute_force_popular(const PrefInstance& inst, const Matching& m,
                         bool complete);

/// Matchings accepted by brute_force_popular, sorted.
std::vector<Matching> enumerate_popular(const PrefInstance& inst,
                                        bool complete = true);

/// All stable matchings by filtering the n! perfect matchings, sorted.
std::vector<StableMatching> enumerate_stable(const StableInstance& inst);

/// Every rotation exposed in `m`, found by searching all sequences of distinct
/// men against is_exposed_rotation. Each starts at its smallest man; sorted.
std::vector<Rotation> exposed_rotations_exhaustive(const StableInstance& inst,
                                                   const StableMatching& m);

} // namespace popmatch

#endif // POPMATCH_ORACLES_HPP
