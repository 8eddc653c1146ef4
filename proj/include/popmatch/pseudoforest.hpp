#ifndef POPMATCH_PSEUDOFOREST_HPP
#define POPMATCH_PSEUDOFOREST_HPP

#include "popmatch/rounds.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace popmatch {

// Directed pseudoforests given as successor arrays: next[v] is v's unique
// out-neighbour or -1. Cycles are reported starting at their smallest vertex
// and following edge direction, sorted by that vertex.

/// Cycle vertices are those with a mutually reachable partner (or a
/// self-loop) in the transitive closure.
std::vector<std::vector<std::int32_t>> find_cycles_closure(
    RoundEngine& engine, std::string_view phase,
    std::span<const std::int32_t> next);

/// Sequential successor walk with visitation marks.
std::vector<std::vector<std::int32_t>> find_cycles_sequential(
    std::span<const std::int32_t> next);

/// Weakly connected component label of every vertex: the smallest vertex
/// reachable in the symmetrized graph.
std::vector<std::int32_t> weak_component_labels(
    RoundEngine& engine, std::string_view phase,
    std::span<const std::int32_t> next);

} // namespace popmatch

#endif // POPMATCH_PSEUDOFOREST_HPP
