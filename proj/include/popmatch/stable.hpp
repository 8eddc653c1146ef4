#ifndef POPMATCH_STABLE_HPP
#define POPMATCH_STABLE_HPP

#include "popmatch/instance.hpp"
#include "popmatch/rounds.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popmatch {

using ManId = std::int32_t;
using WomanId = std::int32_t;
inline constexpr std::int32_t kNobody = -1;

/// Complete strict lists on both sides, 0-based. mp[m][i] is the woman man m
/// ranks at position i; mr[m][w] is her position. Same for wp / wr.
class StableInstance {
public:
  StableInstance() = default;
  /// Throws Error unless every row is a permutation of 0..n-1.
  StableInstance(std::vector<std::vector<WomanId>> men,
                 std::vector<std::vector<ManId>> women);

  std::size_t size() const { return mp_.size(); }
  const std::vector<std::vector<WomanId>>& mp() const { return mp_; }
  const std::vector<std::vector<ManId>>& wp() const { return wp_; }
  std::int32_t man_rank(ManId m, WomanId w) const { return mr_[m][w]; }
  std::int32_t woman_rank(WomanId w, ManId m) const { return wr_[w][m]; }
  bool man_prefers(ManId m, WomanId a, WomanId b) const {
    return mr_[m][a] < mr_[m][b];
  }
  bool woman_prefers(WomanId w, ManId a, ManId b) const {
    return wr_[w][a] < wr_[w][b];
  }
  bool operator==(const StableInstance&) const = default;

private:
  std::vector<std::vector<WomanId>> mp_;
  std::vector<std::vector<ManId>> wp_;
  std::vector<std::vector<std::int32_t>> mr_;
  std::vector<std::vector<std::int32_t>> wr_;
};

/// Perfect matching between men and women.
class StableMatching {
public:
  StableMatching() = default;
  /// Throws Error unless `wife` is a permutation.
  explicit StableMatching(std::vector<WomanId> wife);

  std::size_t size() const { return wife_.size(); }
  WomanId wife(ManId m) const { return wife_[m]; }
  ManId husband(WomanId w) const { return husband_[w]; }
  const std::vector<WomanId>& wives() const { return wife_; }

  bool operator==(const StableMatching& o) const { return wife_ == o.wife_; }
  auto operator<=>(const StableMatching& o) const { return wife_ <=> o.wife_; }

private:
  std::vector<WomanId> wife_;
  std::vector<ManId> husband_;
};

struct BlockingPair {
  ManId man;
  WomanId woman;
  bool operator==(const BlockingPair&) const = default;
};

/// Smallest blocking pair by (man, woman), or nullopt if `m` is stable.
/// Throws Error if sizes differ.
std::optional<BlockingPair> find_blocking_pair(const StableInstance& inst,
                                               const StableMatching& m);
bool is_stable(const StableInstance& inst, const StableMatching& m);

/// Man-proposing deferred acceptance: the man-optimal stable matching.
StableMatching gale_shapley(const StableInstance& inst);

/// a ⪯ b: every man likes his wife in a at least as much as in b.
bool dominates(const StableInstance& inst, const StableMatching& a,
               const StableMatching& b);

/// Per-man list after deleting every (m', w) where w prefers her husband to
/// m'. A man's wife comes first; the second entry, if any, is s_M(m).
struct ReducedLists {
  std::vector<std::vector<WomanId>> lists;
  WomanId second(ManId m) const {
    return lists[m].size() > 1 ? lists[m][1] : kNobody;
  }
};

/// Throws Error if `m` is not stable.
ReducedLists reduced_lists(const StableInstance& inst, const StableMatching& m,
                           RoundEngine& engine = default_engine());

/// H_M over all men: next[m] is the husband of s_M(m), or kNobody when m's
/// reduced list has a single entry.
struct ManGraph {
  std::vector<WomanId> s;
  std::vector<ManId> next;
};

/// Throws Error if `m` is not stable.
ManGraph build_h(const StableInstance& inst, const StableMatching& m,
                 RoundEngine& engine = default_engine());

/// ((m_0, w_0), ..., (m_{k-1}, w_{k-1})) with w_i the wife of m_i.
using Rotation = std::vector<std::pair<ManId, WomanId>>;

/// Checks the rotation conditions directly against the preference lists: k >=
/// 2, the pairs are distinct pairs of `m`, and for every i, w_{i+1} is the
/// highest ranked woman on m_i's list whom m_i likes less than w_i and who
/// prefers m_i to m_{i+1}.
bool is_exposed_rotation(const StableInstance& inst, const StableMatching& m,
                         const Rotation& rotation);

/// Matches m_i to w_{i+1}; other pairs unchanged.
StableMatching eliminate(const StableMatching& m, const Rotation& rotation);

/// One rotation per cycle of H_M (starting at its smallest man, sorted) and
/// the matching obtained by eliminating it. No rotations means `m` is
/// woman-optimal. Throws Error if `m` is not stable.
struct NextStable {
  std::vector<Rotation> rotations;
  std::vector<StableMatching> matchings;
  bool woman_optimal() const { return rotations.empty(); }
};
NextStable next_stable(const StableInstance& inst, const StableMatching& m,
                       RoundEngine& engine = default_engine());

/// All stable matchings reachable from the man-optimal one through
/// next_stable, sorted. Throws Error once more than `cap` are found.
std::vector<StableMatching> enumerate_via_rotations(
    const StableInstance& inst, std::size_t cap = 1'000'000,
    RoundEngine& engine = default_engine());

/// m strictly dominates m_next and no stable matching lies strictly between
/// them. Uses exhaustive enumeration, so the instance must be small. Throws
/// Error if either matching is unstable.
bool immediate_dominance_check(const StableInstance& inst,
                               const StableMatching& m,
                               const StableMatching& m_next);

// Instance text: `n`, then n lines of men's lists and n lines of women's
// lists, each a permutation of 1..n. '#' starts a comment.
StableInstance parse_stable_instance(std::string_view text);
std::string serialize_stable_instance(const StableInstance& inst);
// Matching text: one `m<i> w<j>` line per man.
StableMatching parse_stable_matching(std::string_view text,
                                     const StableInstance& inst);
std::string serialize_stable_matching(const StableMatching& m);

/// Uniformly random lists; a pure function of (n, seed).
StableInstance random_stable_instance(std::size_t n, std::uint64_t seed);

} // namespace popmatch

#endif // POPMATCH_STABLE_HPP
