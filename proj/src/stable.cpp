#include "popmatch/stable.hpp"

#include "popmatch/io.hpp"
#include "popmatch/oracles.hpp"
#include "popmatch/pseudoforest.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace popmatch {

namespace {

std::vector<std::vector<std::int32_t>> inverse_rows(
    const std::vector<std::vector<std::int32_t>>& rows, const char* side) {
  const std::size_t n = rows.size();
  std::vector<std::vector<std::int32_t>> inv(n, std::vector<std::int32_t>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(std::string(side) + " list " + std::to_string(i + 1) +
                  " has the wrong length");
    }
    for (std::size_t r = 0; r < n; ++r) {
      const std::int32_t x = rows[i][r];
      if (x < 0 || static_cast<std::size_t>(x) >= n || inv[i][x] != -1) {
        throw Error(std::string(side) + " list " + std::to_string(i + 1) +
                    " is not a permutation");
      }
      inv[i][x] = static_cast<std::int32_t>(r);
    }
  }
  return inv;
}

void require_stable(const StableInstance& inst, const StableMatching& m) {
  if (auto bp = find_blocking_pair(inst, m)) {
    throw Error("matching is not stable: (m" + std::to_string(bp->man + 1) +
                ", w" + std::to_string(bp->woman + 1) + ") blocks");
  }
}

} // namespace

StableInstance::StableInstance(std::vector<std::vector<WomanId>> men,
                               std::vector<std::vector<ManId>> women)
    : mp_(std::move(men)), wp_(std::move(women)) {
  if (mp_.size() != wp_.size()) {
    throw Error("different numbers of men and women");
  }
  mr_ = inverse_rows(mp_, "man");
  wr_ = inverse_rows(wp_, "woman");
}

StableMatching::StableMatching(std::vector<WomanId> wife)
    : wife_(std::move(wife)), husband_(wife_.size(), kNobody) {
  for (std::size_t m = 0; m < wife_.size(); ++m) {
    const WomanId w = wife_[m];
    if (w < 0 || static_cast<std::size_t>(w) >= wife_.size() ||
        husband_[w] != kNobody) {
      throw Error("not a perfect matching");
    }
    husband_[w] = static_cast<ManId>(m);
  }
}

std::optional<BlockingPair> find_blocking_pair(const StableInstance& inst,
                                               const StableMatching& m) {
  if (inst.size() != m.size()) {
    throw Error("matching size differs from the instance");
  }
  const auto n = static_cast<std::int32_t>(inst.size());
  for (ManId a = 0; a < n; ++a) {
    for (WomanId w = 0; w < n; ++w) {
      if (m.wife(a) != w && inst.man_prefers(a, w, m.wife(a)) &&
          inst.woman_prefers(w, a, m.husband(w))) {
        return BlockingPair{a, w};
      }
    }
  }
  return std::nullopt;
}

bool is_stable(const StableInstance& inst, const StableMatching& m) {
  return !find_blocking_pair(inst, m);
}

StableMatching gale_shapley(const StableInstance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::size_t> next_choice(n, 0);
  std::vector<ManId> husband(n, kNobody);
  std::vector<ManId> free(n);
  std::iota(free.rbegin(), free.rend(), 0);
  while (!free.empty()) {
    const ManId m = free.back();
    const WomanId w = inst.mp()[m][next_choice[m]++];
    if (husband[w] == kNobody) {
      husband[w] = m;
      free.pop_back();
    } else if (inst.woman_prefers(w, m, husband[w])) {
      free.back() = husband[w];
      husband[w] = m;
    }
  }
  std::vector<WomanId> wife(n);
  for (std::size_t w = 0; w < n; ++w) {
    wife[husband[w]] = static_cast<WomanId>(w);
  }
  return StableMatching(std::move(wife));
}

bool dominates(const StableInstance& inst, const StableMatching& a,
               const StableMatching& b) {
  for (std::size_t m = 0; m < inst.size(); ++m) {
    const auto id = static_cast<ManId>(m);
    if (inst.man_prefers(id, b.wife(id), a.wife(id))) {
      return false;
    }
  }
  return true;
}

ReducedLists reduced_lists(const StableInstance& inst, const StableMatching& m,
                           RoundEngine& engine) {
  require_stable(inst, m);
  const std::size_t n = inst.size();
  // Soft deletion: cell (m', i) survives unless woman mp[m'][i] prefers her
  // husband to m'.
  auto keep = engine.map("stable.reduce", n * n, [&](std::size_t cell) {
    const auto man = static_cast<ManId>(cell / n);
    const WomanId w = inst.mp()[man][cell % n];
    return static_cast<std::int64_t>(!inst.woman_prefers(w, m.husband(w), man));
  });
  const auto pos = prefix_sum(engine, "stable.reduce", keep);

  ReducedLists out;
  out.lists.resize(n);
  for (std::size_t man = 0; man < n; ++man) {
    const std::int64_t before = man == 0 ? 0 : pos[man * n - 1];
    out.lists[man].resize(static_cast<std::size_t>(pos[man * n + n - 1] - before));
  }
  engine.for_each("stable.reduce", n * n, [&](std::size_t cell) {
    if (keep[cell]) {
      const std::size_t man = cell / n;
      const std::int64_t before = man == 0 ? 0 : pos[man * n - 1];
      out.lists[man][static_cast<std::size_t>(pos[cell] - before - 1)] =
          inst.mp()[man][cell % n];
    }
  });
  for (std::size_t man = 0; man < n; ++man) {
    if (out.lists[man].empty() ||
        out.lists[man].front() != m.wife(static_cast<ManId>(man))) {
      throw InvariantError("reduced list does not start with the wife");
    }
  }
  return out;
}

ManGraph build_h(const StableInstance& inst, const StableMatching& m,
                 RoundEngine& engine) {
  const ReducedLists red = reduced_lists(inst, m, engine);
  const std::size_t n = inst.size();
  ManGraph h;
  h.s = engine.map("stable.h", n, [&](std::size_t man) {
    return red.second(static_cast<ManId>(man));
  });
  h.next = engine.map("stable.h", n, [&](std::size_t man) {
    return h.s[man] == kNobody ? kNobody : m.husband(h.s[man]);
  });
  return h;
}

bool is_exposed_rotation(const StableInstance& inst, const StableMatching& m,
                         const Rotation& rotation) {
  const std::size_t k = rotation.size();
  if (k < 2) {
    return false;
  }
  std::set<ManId> men;
  for (const auto& [man, woman] : rotation) {
    if (man < 0 || static_cast<std::size_t>(man) >= inst.size() ||
        m.wife(man) != woman || !men.insert(man).second) {
      return false;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto [mi, wi] = rotation[i];
    const auto [mj, wj] = rotation[(i + 1) % k];
    // Highest ranked woman on mi's list meeting both conditions.
    WomanId best = kNobody;
    for (WomanId w : inst.mp()[mi]) {
      if (inst.man_prefers(mi, wi, w) && inst.woman_prefers(w, mi, m.husband(w))) {
        best = w;
        break;
      }
    }
    // Condition (ii) is stated against m_{i+1}, the husband of w_{i+1}.
    if (best != wj || !inst.man_prefers(mi, wi, wj) ||
        !inst.woman_prefers(wj, mi, mj)) {
      return false;
    }
  }
  return true;
}

StableMatching eliminate(const StableMatching& m, const Rotation& rotation) {
  std::vector<WomanId> wife = m.wives();
  for (std::size_t i = 0; i < rotation.size(); ++i) {
    wife[rotation[i].first] = rotation[(i + 1) % rotation.size()].second;
  }
  return StableMatching(std::move(wife));
}

NextStable next_stable(const StableInstance& inst, const StableMatching& m,
                       RoundEngine& engine) {
  // Edges are defined for every man with a second reduced entry, not only for
  // men whose partner changes before the woman-optimal matching. Chains from
  // the extra men may stop at a man without an edge, but every cycle still
  // lies among the changing men, so the cycles are the exposed rotations.
  const ManGraph h = build_h(inst, m, engine);

  NextStable out;
  for (const auto& cyc : find_cycles_closure(engine, "stable.cycles", h.next)) {
    Rotation rot;
    for (std::int32_t man : cyc) {
      rot.emplace_back(man, m.wife(man));
    }
    out.rotations.push_back(std::move(rot));
  }
  out.matchings = engine.map("stable.eliminate", out.rotations.size(),
                             [&](std::size_t i) {
    if (!is_exposed_rotation(inst, m, out.rotations[i])) {
      throw InvariantError("H_M cycle is not an exposed rotation");
    }
    return eliminate(m, out.rotations[i]);
  });
  return out;
}

std::vector<StableMatching> enumerate_via_rotations(const StableInstance& inst,
                                                    std::size_t cap,
                                                    RoundEngine& engine) {
  std::set<StableMatching> seen;
  std::deque<StableMatching> queue;
  queue.push_back(gale_shapley(inst));
  seen.insert(queue.front());
  while (!queue.empty()) {
    const StableMatching cur = std::move(queue.front());
    queue.pop_front();
    for (auto& nxt : next_stable(inst, cur, engine).matchings) {
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) {
          throw Error("more than " + std::to_string(cap) + " stable matchings");
        }
        queue.push_back(std::move(nxt));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool immediate_dominance_check(const StableInstance& inst,
                               const StableMatching& m,
                               const StableMatching& m_next) {
  require_stable(inst, m);
  require_stable(inst, m_next);
  if (m == m_next || !dominates(inst, m, m_next)) {
    return false;
  }
  for (const auto& mid : enumerate_stable(inst)) {
    if (mid != m && mid != m_next && dominates(inst, m, mid) &&
        dominates(inst, mid, m_next)) {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) {
    out.push_back(w);
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(ParseErrorKind::Syntax, line, 1,
                     "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

} // namespace

StableInstance parse_stable_instance(std::string_view text) {
  const auto lines = content_lines(text);
  std::vector<std::vector<std::int32_t>> rows;
  std::size_t n = 0;
  bool have_n = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto ws = words(lines[i]);
    if (ws.empty()) {
      continue;
    }
    if (!have_n) {
      if (ws.size() != 1) {
        throw ParseError(ParseErrorKind::Syntax, i + 1, 1, "expected 'n'");
      }
      n = static_cast<std::size_t>(parse_int(ws[0], i + 1));
      have_n = true;
      continue;
    }
    if (rows.size() == 2 * n) {
      throw ParseError(ParseErrorKind::Syntax, i + 1, 1, "trailing line");
    }
    if (ws.size() != n) {
      throw ParseError(ParseErrorKind::Syntax, i + 1, 1,
                       "expected " + std::to_string(n) + " entries");
    }
    std::vector<std::int32_t> row;
    std::vector<bool> used(n, false);
    for (const auto& w : ws) {
      const std::int64_t v = parse_int(w, i + 1);
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ParseError(ParseErrorKind::IdOutOfRange, i + 1, 1,
                         "entry " + w + " out of range");
      }
      if (used[v - 1]) {
        throw ParseError(ParseErrorKind::DuplicatePost, i + 1, 1,
                         "entry " + w + " repeated");
      }
      used[v - 1] = true;
      row.push_back(static_cast<std::int32_t>(v - 1));
    }
    rows.push_back(std::move(row));
  }
  if (!have_n) {
    throw ParseError(ParseErrorKind::Syntax, 1, 1, "missing header");
  }
  if (rows.size() != 2 * n) {
    throw ParseError(ParseErrorKind::EmptyList, lines.size(), 1,
                     "expected " + std::to_string(2 * n) + " preference lines");
  }
  std::vector<std::vector<std::int32_t>> men(rows.begin(), rows.begin() + n);
  std::vector<std::vector<std::int32_t>> women(rows.begin() + n, rows.end());
  return StableInstance(std::move(men), std::move(women));
}

std::string serialize_stable_instance(const StableInstance& inst) {
  std::ostringstream out;
  out << inst.size() << '\n';
  auto rows = [&](const std::vector<std::vector<std::int32_t>>& r) {
    for (const auto& row : r) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? " " : "") << row[i] + 1;
      }
      out << '\n';
    }
  };
  rows(inst.mp());
  rows(inst.wp());
  return out.str();
}

StableMatching parse_stable_matching(std::string_view text,
                                     const StableInstance& inst) {
  const auto lines = content_lines(text);
  const std::size_t n = inst.size();
  std::vector<WomanId> wife(n, kNobody);
  std::vector<bool> taken(n, false);
  auto label = [&](const std::string& w, char prefix, std::size_t line) {
    if (w.size() < 2 || w[0] != prefix) {
      throw ParseError(ParseErrorKind::Syntax, line, 1,
                       "expected " + std::string(1, prefix) + "<id>, got '" + w + "'");
    }
    const std::int64_t v = parse_int(std::string_view(w).substr(1), line);
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw ParseError(ParseErrorKind::IdOutOfRange, line, 1, w + " out of range");
    }
    return static_cast<std::int32_t>(v - 1);
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto ws = words(lines[i]);
    if (ws.empty()) {
      continue;
    }
    if (ws.size() != 2) {
      throw ParseError(ParseErrorKind::Syntax, i + 1, 1, "expected 'm<i> w<j>'");
    }
    const ManId man = label(ws[0], 'm', i + 1);
    const WomanId woman = label(ws[1], 'w', i + 1);
    if (wife[man] != kNobody) {
      throw ParseError(ParseErrorKind::Syntax, i + 1, 1, ws[0] + " listed twice");
    }
    if (taken[woman]) {
      throw ParseError(ParseErrorKind::DuplicatePost, i + 1, 1,
                       ws[1] + " matched twice");
    }
    wife[man] = woman;
    taken[woman] = true;
  }
  for (std::size_t man = 0; man < n; ++man) {
    if (wife[man] == kNobody) {
      throw ParseError(ParseErrorKind::EmptyList, lines.size(), 1,
                       "m" + std::to_string(man + 1) + " is unmatched");
    }
  }
  return StableMatching(std::move(wife));
}

std::string serialize_stable_matching(const StableMatching& m) {
  std::string out;
  for (std::size_t man = 0; man < m.size(); ++man) {
    out += "m" + std::to_string(man + 1) + " w" +
           std::to_string(m.wife(static_cast<ManId>(man)) + 1) + "\n";
  }
  return out;
}

StableInstance random_stable_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto perms = [&] {
    std::vector<std::vector<std::int32_t>> rows(n);
    for (auto& row : rows) {
      row.resize(n);
      std::iota(row.begin(), row.end(), 0);
      std::shuffle(row.begin(), row.end(), rng);
    }
    return rows;
  };
  auto men = perms();
  auto women = perms();
  return StableInstance(std::move(men), std::move(women));
}

} // namespace popmatch
