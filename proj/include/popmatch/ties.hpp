#ifndef POPMATCH_TIES_HPP
#define POPMATCH_TIES_HPP

#include "popmatch/instance.hpp"

#include <optional>
#include <string>

namespace popmatch {

/// Left vertices become applicants and right vertices posts; each list is a
/// single tie containing all neighbours. No last resort posts. Throws Error
/// for a left vertex without neighbours.
PrefInstance build_ties_instance(const BipartiteGraph& g);

/// Maximum matching by repeated augmenting-path search. Applicants are left
/// vertices, posts right vertices.
Matching maximum_matching(const BipartiteGraph& g);

struct EquivalenceReport {
  bool holds = true;
  std::size_t matchings = 0;
  std::size_t popular = 0;
  std::size_t maximum = 0;
  std::size_t max_size = 0;
  // Pairs (M, M') with |P(M', M)| - |P(M, M')| != |M'| - |M|.
  std::size_t identity_violations = 0;
  std::optional<Matching> counterexample;
  std::string reason;
};

/// Compares, over every matching of g, popularity in the rank-one instance
/// (by pairwise comparison with all other matchings) against having maximum
/// size. Left vertices without neighbours are ignored. Throws Error when g
/// has more than `cap` matchings.
EquivalenceReport check_equivalence(const BipartiteGraph& g,
                                    std::size_t cap = 100'000);

} // namespace popmatch

#endif // POPMATCH_TIES_HPP
