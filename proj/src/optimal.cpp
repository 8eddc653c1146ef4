#include "popmatch/optimal.hpp"

#include "popmatch/popular.hpp"
#include "popmatch/reduce.hpp"

#include <string>

namespace popmatch {

namespace {

std::size_t slot(const PrefInstance& inst, ApplicantId a, PostId p) {
  if (p == kNoPost || inst.is_last_resort(p)) {
    return inst.num_posts();
  }
  return static_cast<std::size_t>(inst.rank(a, p) - 1);
}

struct Prepared {
  Matching full;
  std::vector<SwitchComponent> comps;
};

Prepared prepare(const PrefInstance& inst, const Matching& m,
                 RoundEngine& engine) {
  const ReducedGraph g = reduce(inst, engine);
  if (!is_popular(m, inst, g).popular) {
    throw Error("matching is not popular");
  }
  Prepared out{complete_with_last_resort(m, inst), {}};
  out.comps = decompose(build_switching_graph(g, out.full, engine), engine);
  return out;
}

std::vector<const SwitchMove*> options_of(const SwitchComponent& c) {
  std::vector<const SwitchMove*> out;
  if (c.cycle) {
    out.push_back(&*c.cycle);
  }
  for (const auto& p : c.paths) {
    out.push_back(&p);
  }
  return out;
}

// Index into options_of(c) of the chosen move, or -1 for none. `better(a, b)`
// is a strict order on deltas; the zero delta stands for "no move".
template <class Delta, class DeltaFn, class Better>
std::int32_t pick(const SwitchComponent& c, const Delta& zero, DeltaFn delta,
                  Better better) {
  const auto opts = options_of(c);
  std::int32_t best = -1;
  Delta best_delta = zero;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    Delta d = delta(*opts[i]);
    if (better(d, best_delta)) {
      best = static_cast<std::int32_t>(i);
      best_delta = std::move(d);
    }
  }
  return best;
}

Matching apply_picks(const Matching& full,
                     const std::vector<SwitchComponent>& comps,
                     const std::vector<std::int32_t>& picks) {
  std::vector<SwitchMove> chosen;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (picks[i] >= 0) {
      chosen.push_back(*options_of(comps[i])[picks[i]]);
    }
  }
  return apply_moves(full, chosen);
}

} // namespace

Profile profile_of(const Matching& m, const PrefInstance& inst) {
  Profile out;
  out.x.assign(inst.num_posts() + 1, 0);
  for (std::size_t a = 0; a < m.num_applicants(); ++a) {
    const auto id = static_cast<ApplicantId>(a);
    ++out.x[slot(inst, id, m.post_of(id))];
  }
  return out;
}

bool rank_maximal_better(const Profile& a, const Profile& b) {
  for (std::size_t i = 0; i < a.x.size() && i < b.x.size(); ++i) {
    if (a.x[i] != b.x[i]) {
      return a.x[i] > b.x[i];
    }
  }
  return false;
}

bool fair_better(const Profile& a, const Profile& b) {
  for (std::size_t i = a.x.size(); i-- > 0;) {
    if (a.x[i] != b.x[i]) {
      return a.x[i] < b.x[i];
    }
  }
  return false;
}

Matching max_cardinality(const PrefInstance& inst, const Matching& m,
                         RoundEngine& engine) {
  const Prepared prep = prepare(inst, m, engine);
  const auto picks = engine.map("optimal.select", prep.comps.size(),
                                [&](std::size_t i) {
    return pick(prep.comps[i], 0,
                [](const SwitchMove& mv) { return mv.margin; },
                [](int a, int b) { return a > b; });
  });
  return apply_picks(prep.full, prep.comps, picks);
}

Matching optimal_popular(const PrefInstance& inst, const Matching& m,
                         Criterion criterion, const WeightFn& weight,
                         RoundEngine& engine) {
  const Prepared prep = prepare(inst, m, engine);
  const std::size_t n = prep.comps.size();
  std::vector<std::int32_t> picks;

  if (criterion == Criterion::MaxWeight || criterion == Criterion::MinWeight) {
    if (!weight) {
      throw Error("weight criterion without a weight function");
    }
    auto w = [&](ApplicantId a, PostId p) {
      const auto v = weight(a, p);
      if (!v) {
        throw Error("no weight for a" + std::to_string(a + 1) + " and post " +
                    std::to_string(p + 1));
      }
      return *v;
    };
    const bool maximize = criterion == Criterion::MaxWeight;
    picks = engine.map("optimal.select", n, [&](std::size_t i) {
      return pick(
          prep.comps[i], std::int64_t{0},
          [&](const SwitchMove& mv) {
            std::int64_t d = 0;
            for (const auto& e : mv.edges) {
              d += w(e.applicant, e.to) - w(e.applicant, e.from);
            }
            return d;
          },
          [&](std::int64_t a, std::int64_t b) {
            return maximize ? a > b : a < b;
          });
    });
  } else {
    const bool rank_max = criterion == Criterion::RankMaximal;
    const Profile zero{std::vector<std::int64_t>(inst.num_posts() + 1, 0)};
    picks = engine.map("optimal.select", n, [&](std::size_t i) {
      return pick(
          prep.comps[i], zero,
          [&](const SwitchMove& mv) {
            Profile d = zero;
            for (const auto& e : mv.edges) {
              ++d.x[slot(inst, e.applicant, e.to)];
              --d.x[slot(inst, e.applicant, e.from)];
            }
            return d;
          },
          [&](const Profile& a, const Profile& b) {
            return rank_max ? rank_maximal_better(a, b) : fair_better(a, b);
          });
    });
  }
  return apply_picks(prep.full, prep.comps, picks);
}

} // namespace popmatch
