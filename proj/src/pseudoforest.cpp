#include "popmatch/pseudoforest.hpp"

#include <algorithm>
#include <bit>

namespace popmatch {

namespace {

std::vector<std::int32_t> walk_cycle(std::span<const std::int32_t> next,
                                     std::int32_t start) {
  std::vector<std::int32_t> cycle{start};
  for (std::int32_t v = next[start]; v != start; v = next[v]) {
    cycle.push_back(v);
  }
  return cycle;
}

} // namespace

std::vector<std::vector<std::int32_t>> find_cycles_closure(
    RoundEngine& engine, std::string_view phase,
    std::span<const std::int32_t> next) {
  const std::size_t n = next.size();
  BitMatrix adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (next[v] >= 0) {
      adj.set(v, static_cast<std::size_t>(next[v]));
    }
  }
  const BitMatrix reach = bool_closure(engine, phase, adj);

  // Smallest cycle vertex mutually reachable with v, or -1 if v is off-cycle.
  auto cycle_rep = engine.map(phase, n, [&](std::size_t v) {
    if (next[v] < 0) {
      return std::int32_t{-1};
    }
    if (static_cast<std::size_t>(next[v]) == v) {
      return static_cast<std::int32_t>(v);
    }
    auto row = reach.row(v);
    for (std::size_t w = 0; w < row.size(); ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        const std::size_t j =
            w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (j != v && reach.get(j, v)) {
          return static_cast<std::int32_t>(std::min(j, v));
        }
      }
    }
    return std::int32_t{-1};
  });

  std::vector<std::vector<std::int32_t>> cycles;
  for (std::size_t v = 0; v < n; ++v) {
    if (cycle_rep[v] == static_cast<std::int32_t>(v)) {
      cycles.push_back(walk_cycle(next, static_cast<std::int32_t>(v)));
    }
  }
  return cycles;
}

std::vector<std::vector<std::int32_t>> find_cycles_sequential(
    std::span<const std::int32_t> next) {
  const std::size_t n = next.size();
  // 0 = unvisited, 1 = on the current walk, 2 = finished.
  std::vector<std::uint8_t> mark(n, 0);
  std::vector<std::int32_t> starts;
  for (std::size_t s = 0; s < n; ++s) {
    if (mark[s]) {
      continue;
    }
    std::vector<std::int32_t> walk;
    std::int32_t v = static_cast<std::int32_t>(s);
    while (v >= 0 && mark[v] == 0) {
      mark[v] = 1;
      walk.push_back(v);
      v = next[v];
    }
    if (v >= 0 && mark[v] == 1) {
      std::int32_t lo = v;
      for (std::int32_t u = next[v]; u != v; u = next[u]) {
        lo = std::min(lo, u);
      }
      starts.push_back(lo);
    }
    for (std::int32_t u : walk) {
      mark[u] = 2;
    }
  }
  std::sort(starts.begin(), starts.end());
  std::vector<std::vector<std::int32_t>> cycles;
  for (std::int32_t s : starts) {
    cycles.push_back(walk_cycle(next, s));
  }
  return cycles;
}

std::vector<std::int32_t> weak_component_labels(
    RoundEngine& engine, std::string_view phase,
    std::span<const std::int32_t> next) {
  const std::size_t n = next.size();
  BitMatrix adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (next[v] >= 0) {
      adj.set(v, static_cast<std::size_t>(next[v]));
      adj.set(static_cast<std::size_t>(next[v]), v);
    }
  }
  const BitMatrix reach = bool_closure(engine, phase, adj);
  return engine.map(phase, n, [&](std::size_t v) {
    auto row = reach.row(v);
    for (std::size_t w = 0; w < row.size(); ++w) {
      if (row[w]) {
        return static_cast<std::int32_t>(
            w * 64 + static_cast<std::size_t>(std::countr_zero(row[w])));
      }
    }
    return static_cast<std::int32_t>(v);
  });
}

} // namespace popmatch
