#ifndef POPMATCH_GENERATOR_HPP
#define POPMATCH_GENERATOR_HPP

#include "popmatch/instance.hpp"

#include <cstdint>

namespace popmatch {

struct GenOptions {
  std::size_t applicants = 8;
  std::size_t posts = 8;
  std::uint64_t seed = 1;
  bool ties = false;
  std::size_t min_len = 1;
  std::size_t max_len = 4;
};

// List lengths are uniform in [min_len, max_len] and posts are drawn without
// replacement. With ties, the drawn list is cut into contiguous groups at
// random positions. Output is a pure function of the options.
PrefInstance gen_random(const GenOptions& opts);

/// Random bipartite graph where each of the left*right edges is present with
/// probability `density`.
BipartiteGraph gen_random_bipartite(std::size_t left, std::size_t right,
                                    double density, std::uint64_t seed);

} // namespace popmatch

#endif // POPMATCH_GENERATOR_HPP
