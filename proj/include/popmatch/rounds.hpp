#ifndef POPMATCH_ROUNDS_HPP
#define POPMATCH_ROUNDS_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace popmatch {

// Round-synchronous execution. Every round reads a snapshot taken before the
// round and commits its writes at the barrier, so a round gives the same result
// whether its items run on one thread or many. Per-phase round and op counts
// stand in for parallel depth and work.

struct PhaseStats {
  std::string name;
  std::uint64_t rounds = 0;
  std::uint64_t ops = 0;
};

/// Thread-safe accumulator of per-phase counters. Phases are reported in order
/// of first use.
class RoundStats {
public:
  void record(std::string_view phase, std::uint64_t rounds, std::uint64_t ops);
  std::vector<PhaseStats> snapshot() const;
  std::uint64_t rounds(std::string_view phase) const;
  std::uint64_t ops(std::string_view phase) const;
  void clear();

private:
  mutable std::mutex mutex_;
  std::vector<PhaseStats> phases_;
};

enum class ExecMode { Sequential, Parallel };

class RoundEngine {
public:
  /// In parallel mode rounds with at least `grain` items are split across
  /// `workers` threads (0 = hardware concurrency, at least 2).
  explicit RoundEngine(ExecMode mode = ExecMode::Sequential,
                       std::size_t workers = 0, std::size_t grain = 256);

  RoundEngine(const RoundEngine&) = delete;
  RoundEngine& operator=(const RoundEngine&) = delete;

  ExecMode mode() const { return mode_; }
  RoundStats& stats() { return stats_; }
  const RoundStats& stats() const { return stats_; }

  /// One round: calls f(i) for i in [0, n). f may write only to state owned by
  /// item i and may read only state not written during this round.
  template <class F>
  void for_each(std::string_view phase, std::size_t n, F&& f) {
    run(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        f(i);
      }
    });
    stats_.record(phase, 1, n);
  }

  /// One round producing out[i] = f(i).
  template <class F>
  auto map(std::string_view phase, std::size_t n, F&& f) {
    using R = std::decay_t<std::invoke_result_t<F&, std::size_t>>;
    static_assert(!std::is_same_v<R, bool>,
                  "use std::uint8_t: vector<bool> slots are not independent");
    std::vector<R> out(n);
    for_each(phase, n, [&](std::size_t i) { out[i] = f(i); });
    return out;
  }

  /// Counts a round performed outside for_each (for loop-level accounting).
  void count_round(std::string_view phase, std::uint64_t ops = 0) {
    stats_.record(phase, 1, ops);
  }

private:
  void run(std::size_t n,
           const std::function<void(std::size_t, std::size_t)>& body);

  ExecMode mode_;
  std::size_t workers_;
  std::size_t grain_;
  RoundStats stats_;
};

/// Sequential engine for callers that do not care about stats.
RoundEngine& default_engine();

/// Smallest r with 2^r >= n (0 for n <= 1).
std::size_t ceil_log2(std::size_t n);

/// Items of a successor structure: next[v] is v's successor or -1.
struct ChainInfo {
  // End of v's successor chain, or -1 if the chain runs into a cycle.
  std::vector<std::int32_t> terminal;
  // Steps from v to terminal[v] (unspecified when terminal[v] == -1).
  std::vector<std::int32_t> distance;
  std::size_t rounds = 0;
};

/// Pointer doubling. Stops once every chain is resolved and never runs more
/// than ceil_log2(n) doubling rounds.
ChainInfo successor_double(RoundEngine& engine, std::string_view phase,
                           std::span<const std::int32_t> next);

/// For a functional graph (every next[v] defined), the minimum key over the
/// first >= n vertices of v's orbit; on cycles this is the cycle minimum.
std::vector<std::int64_t> orbit_min(RoundEngine& engine,
                                    std::string_view phase,
                                    std::span<const std::int32_t> next,
                                    std::span<const std::int64_t> keys);

/// Inclusive scan by recursive doubling in ceil_log2(n) rounds.
std::vector<std::int64_t> prefix_sum(RoundEngine& engine,
                                     std::string_view phase,
                                     std::span<const std::int64_t> values);

/// Dense square boolean matrix with bit-packed rows.
class BitMatrix {
public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    auto& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  std::span<std::uint64_t> row(std::size_t i) {
    return {bits_.data() + i * words_, words_};
  }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }
  bool operator==(const BitMatrix&) const = default;

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Reflexive-transitive closure: (I | A) squared ceil_log2(n) times. Entry
/// (i, j) of the result is set iff j is reachable from i (i == j included).
BitMatrix bool_closure(RoundEngine& engine, std::string_view phase,
                       const BitMatrix& adj);

/// Closes several matrices in lockstep: squaring k of every matrix happens in
/// the same round.
std::vector<BitMatrix> bool_closure_batch(RoundEngine& engine,
                                          std::string_view phase,
                                          std::vector<BitMatrix> adjs);

} // namespace popmatch

#endif // POPMATCH_ROUNDS_HPP
