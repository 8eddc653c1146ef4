#include "popmatch/switching.hpp"

#include "popmatch/pseudoforest.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace popmatch {

std::vector<PostId> SwitchingGraph::component_labels() const {
  std::vector<PostId> out;
  for (PostId p : vertices) {
    if (component[p] == p) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<PostId> SwitchingGraph::component_vertices(PostId label) const {
  std::vector<PostId> out;
  for (PostId p : vertices) {
    if (component[p] == label) {
      out.push_back(p);
    }
  }
  return out;
}

PostId SwitchingGraph::sink_of(PostId label) const {
  for (PostId p : vertices) {
    if (component[p] == label && is_sink[p]) {
      return p;
    }
  }
  return kNoPost;
}

namespace {

// Successor array over dense vertex indices.
std::vector<std::int32_t> dense_next(const SwitchingGraph& sg,
                                     const std::vector<std::int32_t>& index) {
  std::vector<std::int32_t> next(sg.vertices.size(), -1);
  for (std::size_t i = 0; i < sg.vertices.size(); ++i) {
    const PostId to = sg.out[sg.vertices[i]];
    if (to != kNoPost) {
      next[i] = index[to];
    }
  }
  return next;
}

int edge_margin(std::size_t num_real_posts, const SwitchEdge& e) {
  auto real = [&](PostId p) {
    return static_cast<std::size_t>(p) < num_real_posts ? 1 : 0;
  };
  return real(e.to) - real(e.from);
}

SwitchMove make_move(const SwitchingGraph& sg, MoveKind kind,
                     const std::vector<PostId>& posts) {
  SwitchMove move;
  move.kind = kind;
  const std::size_t steps = kind == MoveKind::Cycle ? posts.size() : posts.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const PostId from = posts[i];
    SwitchEdge e{sg.edge_label[from], from, sg.out[from]};
    move.margin += edge_margin(sg.num_real_posts, e);
    move.edges.push_back(e);
  }
  return move;
}

std::vector<std::int32_t> dense_index(const SwitchingGraph& sg) {
  std::vector<std::int32_t> index(sg.num_total_posts, -1);
  for (std::size_t i = 0; i < sg.vertices.size(); ++i) {
    index[sg.vertices[i]] = static_cast<std::int32_t>(i);
  }
  return index;
}

// Switching paths for several tree components, all candidate copies closed
// in one batch.
std::map<PostId, std::vector<SwitchMove>> paths_for(
    const SwitchingGraph& sg, const std::vector<PostId>& labels,
    RoundEngine& engine) {
  struct Candidate {
    PostId label;
    PostId start;
    PostId sink;
    std::vector<PostId> local; // component vertices, ascending
  };
  std::vector<Candidate> cands;
  std::vector<BitMatrix> copies;
  for (PostId label : labels) {
    const PostId sink = sg.sink_of(label);
    if (sink == kNoPost) {
      throw Error("component p" + std::to_string(label + 1) +
                  " has no sink");
    }
    auto local = sg.component_vertices(label);
    std::map<PostId, std::size_t> at;
    for (std::size_t i = 0; i < local.size(); ++i) {
      at[local[i]] = i;
    }
    for (PostId q : local) {
      if (!sg.is_s_post[q] || q == sink) {
        continue;
      }
      BitMatrix adj(local.size());
      for (std::size_t i = 0; i < local.size(); ++i) {
        const PostId to = sg.out[local[i]];
        if (to != kNoPost) {
          adj.set(i, at.at(to));
        }
      }
      adj.set(at.at(sink), at.at(q));
      copies.push_back(std::move(adj));
      cands.push_back({label, q, sink, local});
    }
  }
  auto closed = bool_closure_batch(engine, "switch.paths", std::move(copies));

  auto moves = engine.map("switch.paths", cands.size(), [&](std::size_t c) {
    const Candidate& cand = cands[c];
    const BitMatrix& reach = closed[c];
    auto pos = [&](PostId p) {
      return static_cast<std::size_t>(
          std::lower_bound(cand.local.begin(), cand.local.end(), p) -
          cand.local.begin());
    };
    const std::size_t qi = pos(cand.start);
    std::size_t on_cycle = 0;
    for (std::size_t v = 0; v < cand.local.size(); ++v) {
      on_cycle += reach.get(qi, v) && reach.get(v, qi);
    }
    std::vector<PostId> posts{cand.start};
    while (posts.back() != cand.sink) {
      const PostId nxt = sg.out[posts.back()];
      if (nxt == kNoPost || !reach.get(pos(nxt), qi)) {
        throw InvariantError("switching path leaves the closure cycle");
      }
      posts.push_back(nxt);
    }
    if (posts.size() != on_cycle) {
      throw InvariantError("switching path disagrees with closure cycle");
    }
    return make_move(sg, MoveKind::Path, posts);
  });

  std::map<PostId, std::vector<SwitchMove>> out;
  for (PostId label : labels) {
    out[label];
  }
  for (std::size_t c = 0; c < cands.size(); ++c) {
    out[cands[c].label].push_back(std::move(moves[c]));
  }
  return out;
}

} // namespace

SwitchingGraph build_switching_graph(const ReducedGraph& g, const Matching& m,
                                     RoundEngine& engine) {
  const std::size_t num_posts = g.num_total_posts;
  const std::size_t num_apps = g.num_applicants();
  if (m.num_applicants() != num_apps || m.num_total_posts() != num_posts) {
    throw Error("matching does not fit the reduced graph");
  }
  for (std::size_t a = 0; a < num_apps; ++a) {
    const PostId p = m.post_of(static_cast<ApplicantId>(a));
    if (p != g.f[a] && p != g.s[a]) {
      throw Error("matching is not popular: a" + std::to_string(a + 1) +
                  " is not on f(a) or s(a)");
    }
  }
  for (std::size_t p = 0; p < num_posts; ++p) {
    if (g.is_f_post[p] && !m.post_matched(static_cast<PostId>(p))) {
      throw Error("matching is not popular: f-post p" + std::to_string(p + 1) +
                  " unmatched");
    }
  }

  SwitchingGraph sg;
  sg.num_real_posts = g.num_real_posts;
  sg.num_total_posts = num_posts;
  sg.is_s_post = g.is_s_post;
  for (std::size_t p = 0; p < num_posts; ++p) {
    if (g.degree[p] > 0) {
      sg.vertices.push_back(static_cast<PostId>(p));
    }
  }
  struct Out {
    PostId to = kNoPost;
    ApplicantId label = kNoApplicant;
  };
  auto outs = engine.map("switch.build", num_posts, [&](std::size_t p) {
    Out o;
    const ApplicantId a = m.applicant_of(static_cast<PostId>(p));
    if (g.degree[p] > 0 && a != kNoApplicant) {
      o.to = g.other(a, static_cast<PostId>(p));
      o.label = a;
    }
    return o;
  });
  sg.out.resize(num_posts);
  sg.edge_label.resize(num_posts);
  sg.is_sink.assign(num_posts, 0);
  for (std::size_t p = 0; p < num_posts; ++p) {
    sg.out[p] = outs[p].to;
    sg.edge_label[p] = outs[p].label;
    sg.is_sink[p] = g.degree[p] > 0 && outs[p].to == kNoPost;
  }

  const auto index = dense_index(sg);
  const auto next = dense_next(sg, index);
  const auto labels = weak_component_labels(engine, "switch.components", next);
  sg.component.assign(num_posts, kNoPost);
  for (std::size_t i = 0; i < sg.vertices.size(); ++i) {
    sg.component[sg.vertices[i]] = sg.vertices[labels[i]];
  }
  return sg;
}

std::vector<SwitchMove> find_cycles(const SwitchingGraph& sg,
                                    RoundEngine& engine) {
  const auto index = dense_index(sg);
  const auto next = dense_next(sg, index);
  std::vector<SwitchMove> out;
  for (const auto& cyc : find_cycles_closure(engine, "switch.cycles", next)) {
    std::vector<PostId> posts;
    for (std::int32_t v : cyc) {
      posts.push_back(sg.vertices[v]);
    }
    out.push_back(make_move(sg, MoveKind::Cycle, posts));
  }
  return out;
}

std::vector<SwitchMove> find_switching_paths(const SwitchingGraph& sg,
                                             PostId component,
                                             RoundEngine& engine) {
  return paths_for(sg, {component}, engine).at(component);
}

std::vector<SwitchComponent> decompose(const SwitchingGraph& sg,
                                       RoundEngine& engine) {
  std::vector<SwitchComponent> comps;
  std::vector<PostId> trees;
  for (PostId label : sg.component_labels()) {
    SwitchComponent c;
    c.label = label;
    c.vertices = sg.component_vertices(label);
    c.sink = sg.sink_of(label);
    if (c.is_tree()) {
      trees.push_back(label);
    }
    comps.push_back(std::move(c));
  }
  auto cycles = find_cycles(sg, engine);
  auto paths = paths_for(sg, trees, engine);
  for (auto& c : comps) {
    if (c.is_tree()) {
      c.paths = std::move(paths.at(c.label));
    }
  }
  for (auto& cyc : cycles) {
    const PostId label = sg.component[cyc.source()];
    auto it = std::find_if(comps.begin(), comps.end(),
                           [&](const auto& c) { return c.label == label; });
    if (it == comps.end() || it->is_tree() || it->cycle) {
      throw InvariantError("component with both a sink and a cycle");
    }
    it->cycle = std::move(cyc);
  }
  for (const auto& c : comps) {
    if (!c.is_tree() && !c.cycle) {
      throw InvariantError("component without sink or cycle");
    }
  }
  return comps;
}

int margin(const SwitchMove& move, const PrefInstance& inst) {
  int delta = 0;
  for (const auto& e : move.edges) {
    delta += edge_margin(inst.num_posts(), e);
  }
  return delta;
}

Matching apply_move(const Matching& m, const SwitchMove& move) {
  return apply_moves(m, std::span<const SwitchMove>(&move, 1));
}

Matching apply_moves(const Matching& m, std::span<const SwitchMove> moves) {
  Matching out = m;
  for (const auto& move : moves) {
    for (const auto& e : move.edges) {
      if (out.post_of(e.applicant) != e.from) {
        throw Error("stale move: a" + std::to_string(e.applicant + 1) +
                    " is not on p" + std::to_string(e.from + 1));
      }
      out.unassign(e.applicant);
    }
  }
  for (const auto& move : moves) {
    for (const auto& e : move.edges) {
      if (out.post_matched(e.to)) {
        throw Error("stale move: target post already taken");
      }
      out.assign(e.applicant, e.to);
    }
  }
  return out;
}

std::vector<Matching> popular_matchings_by_switching(const ReducedGraph& g,
                                                     const Matching& m,
                                                     std::size_t cap,
                                                     RoundEngine& engine) {
  const auto sg = build_switching_graph(g, m, engine);
  const auto comps = decompose(sg, engine);
  // Options per component; index 0 is "no move".
  std::vector<std::vector<const SwitchMove*>> options;
  std::size_t total = 1;
  for (const auto& c : comps) {
    std::vector<const SwitchMove*> opts{nullptr};
    if (c.cycle) {
      opts.push_back(&*c.cycle);
    }
    for (const auto& p : c.paths) {
      opts.push_back(&p);
    }
    if (total > cap / opts.size()) {
      throw Error("more than " + std::to_string(cap) + " popular matchings");
    }
    total *= opts.size();
    options.push_back(std::move(opts));
  }
  std::vector<Matching> out;
  out.reserve(total);
  std::vector<std::size_t> choice(options.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<SwitchMove> chosen;
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (options[i][choice[i]]) {
        chosen.push_back(*options[i][choice[i]]);
      }
    }
    out.push_back(apply_moves(m, chosen));
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (++choice[i] < options[i].size()) {
        break;
      }
      choice[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace popmatch
