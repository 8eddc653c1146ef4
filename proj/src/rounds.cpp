#include "popmatch/rounds.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace popmatch {

void RoundStats::record(std::string_view phase, std::uint64_t rounds,
                        std::uint64_t ops) {
  std::lock_guard lock(mutex_);
  for (auto& p : phases_) {
    if (p.name == phase) {
      p.rounds += rounds;
      p.ops += ops;
      return;
    }
  }
  phases_.push_back({std::string(phase), rounds, ops});
}

std::vector<PhaseStats> RoundStats::snapshot() const {
  std::lock_guard lock(mutex_);
  return phases_;
}

std::uint64_t RoundStats::rounds(std::string_view phase) const {
  std::lock_guard lock(mutex_);
  for (const auto& p : phases_) {
    if (p.name == phase) {
      return p.rounds;
    }
  }
  return 0;
}

std::uint64_t RoundStats::ops(std::string_view phase) const {
  std::lock_guard lock(mutex_);
  for (const auto& p : phases_) {
    if (p.name == phase) {
      return p.ops;
    }
  }
  return 0;
}

void RoundStats::clear() {
  std::lock_guard lock(mutex_);
  phases_.clear();
}

RoundEngine::RoundEngine(ExecMode mode, std::size_t workers, std::size_t grain)
    : mode_(mode), workers_(workers), grain_(std::max<std::size_t>(grain, 1)) {
  if (workers_ == 0) {
    workers_ = std::max(2u, std::thread::hardware_concurrency());
  }
}

void RoundEngine::run(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t)>& body) {
  if (mode_ == ExecMode::Sequential || n < grain_ || workers_ < 2) {
    body(0, n);
    return;
  }
  const std::size_t threads = std::min(workers_, (n + grain_ - 1) / grain_);
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

RoundEngine& default_engine() {
  thread_local RoundEngine engine(ExecMode::Sequential);
  return engine;
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) {
    ++r;
  }
  return r;
}

ChainInfo successor_double(RoundEngine& engine, std::string_view phase,
                           std::span<const std::int32_t> next) {
  const std::size_t n = next.size();
  ChainInfo info;
  std::vector<std::int32_t> ptr(n);
  std::vector<std::int32_t> dist(n);
  for (std::size_t v = 0; v < n; ++v) {
    ptr[v] = next[v] < 0 ? static_cast<std::int32_t>(v) : next[v];
    dist[v] = next[v] < 0 ? 0 : 1;
  }
  auto resolved = [&](std::size_t v) { return next[ptr[v]] < 0; };

  const std::size_t max_rounds = ceil_log2(n);
  while (info.rounds < max_rounds) {
    bool all = true;
    for (std::size_t v = 0; v < n && all; ++v) {
      all = resolved(v);
    }
    if (all) {
      break;
    }
    struct Step {
      std::int32_t ptr;
      std::int32_t dist;
    };
    auto stepped = engine.map(phase, n, [&](std::size_t v) {
      const auto p = static_cast<std::size_t>(ptr[v]);
      return Step{ptr[p], dist[v] + dist[p]};
    });
    for (std::size_t v = 0; v < n; ++v) {
      ptr[v] = stepped[v].ptr;
      dist[v] = stepped[v].dist;
    }
    ++info.rounds;
  }

  info.terminal.assign(n, -1);
  info.distance.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (resolved(v)) {
      info.terminal[v] = ptr[v];
      info.distance[v] = dist[v];
    }
  }
  return info;
}

std::vector<std::int64_t> orbit_min(RoundEngine& engine,
                                    std::string_view phase,
                                    std::span<const std::int32_t> next,
                                    std::span<const std::int64_t> keys) {
  const std::size_t n = next.size();
  std::vector<std::int32_t> ptr(next.begin(), next.end());
  std::vector<std::int64_t> best(keys.begin(), keys.end());
  // Invariant after r rounds: best[v] covers the 2^r vertices starting at v
  // and ptr[v] is the vertex 2^r steps ahead.
  for (std::size_t r = 0; r < ceil_log2(n); ++r) {
    struct Step {
      std::int32_t ptr;
      std::int64_t best;
    };
    auto stepped = engine.map(phase, n, [&](std::size_t v) {
      const auto p = static_cast<std::size_t>(ptr[v]);
      return Step{ptr[p], std::min(best[v], best[p])};
    });
    for (std::size_t v = 0; v < n; ++v) {
      ptr[v] = stepped[v].ptr;
      best[v] = stepped[v].best;
    }
  }
  return best;
}

std::vector<std::int64_t> prefix_sum(RoundEngine& engine,
                                     std::string_view phase,
                                     std::span<const std::int64_t> values) {
  std::vector<std::int64_t> acc(values.begin(), values.end());
  const std::size_t n = acc.size();
  for (std::size_t offset = 1; offset < n; offset <<= 1) {
    acc = engine.map(phase, n, [&](std::size_t i) {
      return i >= offset ? acc[i] + acc[i - offset] : acc[i];
    });
  }
  return acc;
}

namespace {

BitMatrix with_identity(const BitMatrix& adj) {
  BitMatrix r = adj;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.set(i, i);
  }
  return r;
}

// Row i of m*m over the boolean semiring.
void square_row(const BitMatrix& m, std::size_t i, std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  auto src = m.row(i);
  for (std::size_t w = 0; w < src.size(); ++w) {
    std::uint64_t bits = src[w];
    while (bits) {
      const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      auto rk = m.row(k);
      for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] |= rk[x];
      }
    }
  }
}

} // namespace

BitMatrix bool_closure(RoundEngine& engine, std::string_view phase,
                       const BitMatrix& adj) {
  std::vector<BitMatrix> one;
  one.push_back(adj);
  return std::move(bool_closure_batch(engine, phase, std::move(one)).front());
}

std::vector<BitMatrix> bool_closure_batch(RoundEngine& engine,
                                          std::string_view phase,
                                          std::vector<BitMatrix> adjs) {
  std::size_t max_n = 0;
  std::vector<std::size_t> row_start;
  std::size_t total_rows = 0;
  for (auto& m : adjs) {
    m = with_identity(m);
    max_n = std::max(max_n, m.size());
    row_start.push_back(total_rows);
    total_rows += m.size();
  }
  std::vector<std::size_t> owner(total_rows);
  for (std::size_t k = 0; k < adjs.size(); ++k) {
    std::fill_n(owner.begin() + static_cast<std::ptrdiff_t>(row_start[k]),
                adjs[k].size(), k);
  }
  for (std::size_t r = 0; r < ceil_log2(max_n); ++r) {
    std::vector<BitMatrix> next;
    next.reserve(adjs.size());
    for (const auto& m : adjs) {
      next.emplace_back(m.size());
    }
    engine.for_each(phase, total_rows, [&](std::size_t idx) {
      const std::size_t k = owner[idx];
      const std::size_t i = idx - row_start[k];
      square_row(adjs[k], i, next[k].row(i));
    });
    adjs = std::move(next);
  }
  return adjs;
}

} // namespace popmatch
