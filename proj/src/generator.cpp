#include "popmatch/generator.hpp"

#include <numeric>
#include <random>
#include <string>

namespace popmatch {

PrefInstance gen_random(const GenOptions& opts) {
  if (opts.posts == 0) {
    throw Error("need at least one post");
  }
  if (opts.min_len == 0 || opts.min_len > opts.max_len ||
      opts.max_len > opts.posts) {
    throw Error("invalid list length range [" + std::to_string(opts.min_len) +
                ", " + std::to_string(opts.max_len) + "] for " +
                std::to_string(opts.posts) + " posts");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<PostId> pool(opts.posts);
  std::vector<PrefList> lists(opts.applicants);
  for (auto& list : lists) {
    std::iota(pool.begin(), pool.end(), 0);
    std::uniform_int_distribution<std::size_t> len_dist(opts.min_len,
                                                        opts.max_len);
    const std::size_t len = len_dist(rng);
    // Partial Fisher-Yates: the first `len` slots become the drawn list.
    for (std::size_t i = 0; i < len; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    RankGroup group{pool[0]};
    for (std::size_t i = 1; i < len; ++i) {
      bool cut = true;
      if (opts.ties) {
        cut = std::bernoulli_distribution(0.5)(rng);
      }
      if (cut) {
        list.push_back(std::move(group));
        group.clear();
      }
      group.push_back(pool[i]);
    }
    list.push_back(std::move(group));
  }
  return PrefInstance(opts.posts, std::move(lists), true);
}

BipartiteGraph gen_random_bipartite(std::size_t left, std::size_t right,
                                    double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::size_t u = 0; u < left; ++u) {
    for (std::size_t v = 0; v < right; ++v) {
      if (coin(rng)) {
        edges.emplace_back(static_cast<std::int32_t>(u),
                           static_cast<std::int32_t>(v));
      }
    }
  }
  return BipartiteGraph(left, right, std::move(edges));
}

} // namespace popmatch
