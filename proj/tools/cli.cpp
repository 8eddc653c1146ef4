#include "cli.hpp"

#include "popmatch/generator.hpp"
#include "popmatch/io.hpp"
#include "popmatch/optimal.hpp"
#include "popmatch/oracles.hpp"
#include "popmatch/popular.hpp"
#include "popmatch/reduce.hpp"
#include "popmatch/stable.hpp"
#include "popmatch/switching.hpp"
#include "popmatch/ties.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <sstream>

namespace popmatch::cli {

namespace {

std::string applicant_name(ApplicantId a) { return "a" + std::to_string(a + 1); }

std::string profile_line(const Profile& p) {
  std::string s = "profile:";
  for (auto x : p.x) {
    s += " " + std::to_string(x);
  }
  return s;
}

std::string move_line(const SwitchMove& mv, const PrefInstance& inst) {
  std::string s = mv.kind == MoveKind::Cycle ? "cycle: " : "path: ";
  s += post_name(inst, mv.edges.front().from);
  for (const auto& e : mv.edges) {
    s += " -" + applicant_name(e.applicant) + "-> " + post_name(inst, e.to);
  }
  return s + " margin " + std::to_string(mv.margin);
}

std::string rotation_line(const Rotation& r) {
  std::string s = "rotation:";
  for (const auto& [m, w] : r) {
    s += " (m" + std::to_string(m + 1) + ",w" + std::to_string(w + 1) + ")";
  }
  return s;
}

PrefInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

PrefInstance load_strict(const std::string& path) {
  PrefInstance inst = load_instance(path);
  if (!inst.strict()) {
    throw Error("instance has ties; this command needs strict lists");
  }
  return inst;
}

BipartiteGraph load_graph(const std::string& path) {
  return parse_bipartite(read_file(path));
}

// Pairs of a matching with possibly dropped applicants, printed without an
// instance.
std::string raw_pairs(const Matching& m) {
  std::string s;
  for (std::size_t a = 0; a < m.num_applicants(); ++a) {
    const PostId p = m.post_of(static_cast<ApplicantId>(a));
    if (p != kNoPost) {
      s += applicant_name(static_cast<ApplicantId>(a)) + " p" +
           std::to_string(p + 1) + "\n";
    }
  }
  return s;
}

struct Command {
  CLI::App* app;
  std::function<int()> run;
};

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Popular matchings and stable marriage rotations", "popmatch"};
  app.require_subcommand(1);
  bool stats = false;
  bool seq = false;
  std::size_t workers = 0;
  app.add_flag("--stats", stats, "print per-phase round counts to stderr");
  app.add_flag("--seq", seq, "run every round sequentially");
  app.add_option("--workers", workers, "threads per parallel round (0 = auto)");

  std::unique_ptr<RoundEngine> engine_ptr;
  auto engine = [&]() -> RoundEngine& { return *engine_ptr; };
  std::vector<Command> commands;
  auto leaf = [&](CLI::App* parent, const std::string& name,
                  const std::string& desc) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };

  CLI::App* pm = app.add_subcommand("pm", "popular matchings");
  pm->require_subcommand(1);
  pm->fallthrough();
  CLI::App* sm = app.add_subcommand("sm", "stable marriage");
  sm->require_subcommand(1);
  sm->fallthrough();

  std::string file;
  std::string matching_file;

  auto solve_or_report = [&](const PrefInstance& inst) -> std::optional<Matching> {
    auto res = solve_popular(inst, engine());
    if (!res) {
      out << "no popular matching\n";
      return std::nullopt;
    }
    return *res.matching;
  };

  {
    auto* c = leaf(pm, "solve", "find a popular matching");
    c->add_option("file", file, "instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      auto m = solve_or_report(inst);
      if (!m) {
        return kNegative;
      }
      out << serialize_matching(*m, inst);
      return kOk;
    }});
  }
  {
    auto* c = leaf(pm, "max", "find a maximum-cardinality popular matching");
    c->add_option("file", file, "instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      auto m = solve_or_report(inst);
      if (!m) {
        return kNegative;
      }
      const Matching best = max_cardinality(inst, *m, engine());
      out << serialize_matching(best, inst) << profile_line(profile_of(best, inst))
          << "\n";
      return kOk;
    }});
  }
  std::string criterion;
  {
    auto* c = leaf(pm, "optimal", "find a rank-maximal or fair popular matching");
    c->add_option("--criterion", criterion, "rank-maximal or fair")
        ->required()
        ->check(CLI::IsMember({"rank-maximal", "fair"}));
    c->add_option("file", file, "instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      auto m = solve_or_report(inst);
      if (!m) {
        return kNegative;
      }
      const Criterion crit =
          criterion == "fair" ? Criterion::Fair : Criterion::RankMaximal;
      const Matching best = optimal_popular(inst, *m, crit, {}, engine());
      out << serialize_matching(best, inst) << profile_line(profile_of(best, inst))
          << "\n";
      return kOk;
    }});
  }
  {
    auto* c = leaf(pm, "verify", "check a matching against the characterization");
    c->add_option("file", file, "instance file")->required();
    c->add_option("matching", matching_file, "matching file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      const auto m = parse_matching(read_file(matching_file), inst);
      const auto g = reduce(inst, engine());
      const auto report = is_popular(m, inst, g);
      if (report.popular) {
        out << "popular\n";
        return kOk;
      }
      out << "not popular\n";
      for (PostId p : report.unmatched_f_posts) {
        out << "unmatched f-post " << post_name(inst, p) << "\n";
      }
      for (ApplicantId a : report.misplaced_applicants) {
        out << "misplaced " << applicant_name(a) << "\n";
      }
      return kNegative;
    }});
  }
  {
    auto* c = leaf(pm, "reduce", "print f-posts, s-posts and reduced lists");
    c->add_option("file", file, "instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      const auto g = reduce(inst, engine());
      out << "f-posts:";
      for (PostId p : g.f_posts()) {
        out << " " << post_name(inst, p);
      }
      out << "\ns-posts:";
      for (PostId p : g.s_posts()) {
        out << " " << post_name(inst, p);
      }
      out << "\n";
      for (std::size_t a = 0; a < g.num_applicants(); ++a) {
        out << applicant_name(static_cast<ApplicantId>(a)) << ": "
            << post_name(inst, g.f[a]) << " " << post_name(inst, g.s[a]) << "\n";
      }
      return kOk;
    }});
  }
  {
    auto* c = leaf(pm, "switching", "decompose the switching graph of a matching");
    c->add_option("file", file, "instance file")->required();
    c->add_option("matching", matching_file, "popular matching file")->required();
    commands.push_back({c, [&] {
      const auto inst = load_strict(file);
      const auto m = parse_matching(read_file(matching_file), inst);
      const auto g = reduce(inst, engine());
      if (!is_popular(m, inst, g).popular) {
        out << "not popular\n";
        return kNegative;
      }
      const auto sg =
          build_switching_graph(g, complete_with_last_resort(m, inst), engine());
      for (const auto& comp : decompose(sg, engine())) {
        out << "component " << post_name(inst, comp.label) << ": "
            << (comp.is_tree() ? "tree" : "cycle") << "\nvertices:";
        for (PostId p : comp.vertices) {
          out << " " << post_name(inst, p);
        }
        out << "\n";
        if (comp.cycle) {
          out << move_line(*comp.cycle, inst) << "\n";
        } else {
          out << "sink: " << post_name(inst, comp.sink) << "\n";
          for (const auto& path : comp.paths) {
            out << move_line(path, inst) << "\n";
          }
        }
      }
      return kOk;
    }});
  }
  GenOptions gen;
  {
    auto* c = leaf(pm, "gen", "print a random instance");
    c->add_option("--applicants", gen.applicants, "number of applicants");
    c->add_option("--posts", gen.posts, "number of posts");
    c->add_option("--seed", gen.seed, "random seed");
    c->add_flag("--ties", gen.ties, "allow ties");
    c->add_option("--min-len", gen.min_len, "shortest list");
    c->add_option("--max-len", gen.max_len, "longest list");
    commands.push_back({c, [&] {
      out << serialize_instance(gen_random(gen));
      return kOk;
    }});
  }
  {
    auto* c = leaf(pm, "from-bipartite", "rank-one instance of a bipartite graph");
    c->add_option("file", file, "graph file")->required();
    commands.push_back({c, [&] {
      out << serialize_instance(build_ties_instance(load_graph(file)));
      return kOk;
    }});
  }
  std::size_t cap = 100'000;
  {
    auto* c = leaf(pm, "check-equivalence",
                   "compare popular and maximum matchings of a graph");
    c->add_option("file", file, "graph file")->required();
    c->add_option("--cap", cap, "largest number of matchings to enumerate");
    commands.push_back({c, [&] {
      const auto report = check_equivalence(load_graph(file), cap);
      if (report.holds) {
        out << "PASS matchings " << report.matchings << " popular "
            << report.popular << " maximum " << report.maximum << " size "
            << report.max_size << "\n";
        return kOk;
      }
      out << "FAIL " << report.reason << "\n";
      if (report.counterexample) {
        out << raw_pairs(*report.counterexample);
      }
      return kNegative;
    }});
  }
  {
    auto* c = leaf(pm, "oracle", "exhaustive popularity check or enumeration");
    c->add_option("file", file, "instance file")->required();
    c->add_option("matching", matching_file, "matching file");
    commands.push_back({c, [&] {
      const auto inst = load_instance(file);
      const bool complete = inst.has_last_resort();
      if (!matching_file.empty()) {
        const auto m = parse_matching(read_file(matching_file), inst);
        const auto witness = more_popular_witness(inst, m, complete);
        if (!witness) {
          out << "popular\n";
          return kOk;
        }
        out << "not popular\nmore popular:\n" << serialize_matching(*witness, inst);
        return kNegative;
      }
      const auto all = enumerate_popular(inst, complete);
      out << "popular matchings: " << all.size() << "\n";
      for (std::size_t i = 0; i < all.size(); ++i) {
        out << "# " << i + 1 << "\n" << serialize_matching(all[i], inst);
      }
      return all.empty() ? kNegative : kOk;
    }});
  }
  {
    auto* c = leaf(sm, "gale-shapley", "man-optimal stable matching");
    c->add_option("file", file, "stable instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = parse_stable_instance(read_file(file));
      out << serialize_stable_matching(gale_shapley(inst));
      return kOk;
    }});
  }
  {
    auto* c = leaf(sm, "next", "eliminate every exposed rotation");
    c->add_option("file", file, "stable instance file")->required();
    c->add_option("matching", matching_file, "stable matching file")->required();
    commands.push_back({c, [&] {
      const auto inst = parse_stable_instance(read_file(file));
      const auto m = parse_stable_matching(read_file(matching_file), inst);
      const auto res = next_stable(inst, m, engine());
      if (res.woman_optimal()) {
        out << "woman-optimal\n";
        return kNegative;
      }
      for (std::size_t i = 0; i < res.rotations.size(); ++i) {
        out << (i ? "\n" : "") << rotation_line(res.rotations[i]) << "\n"
            << serialize_stable_matching(res.matchings[i]);
      }
      return kOk;
    }});
  }
  {
    auto* c = leaf(sm, "enumerate", "all stable matchings through rotations");
    c->add_option("file", file, "stable instance file")->required();
    commands.push_back({c, [&] {
      const auto inst = parse_stable_instance(read_file(file));
      const auto all = enumerate_via_rotations(inst, 1'000'000, engine());
      out << "stable matchings: " << all.size() << "\n";
      for (std::size_t i = 0; i < all.size(); ++i) {
        out << "# " << i + 1 << "\n" << serialize_stable_matching(all[i]);
      }
      return kOk;
    }});
  }
  {
    auto* c = leaf(sm, "oracle", "exhaustive stability check or enumeration");
    c->add_option("file", file, "stable instance file")->required();
    c->add_option("matching", matching_file, "matching file");
    commands.push_back({c, [&] {
      const auto inst = parse_stable_instance(read_file(file));
      if (!matching_file.empty()) {
        const auto m = parse_stable_matching(read_file(matching_file), inst);
        if (auto bp = find_blocking_pair(inst, m)) {
          out << "not stable\nblocking pair: m" << bp->man + 1 << " w"
              << bp->woman + 1 << "\n";
          return kNegative;
        }
        out << "stable\n";
        return kOk;
      }
      const auto all = enumerate_stable(inst);
      out << "stable matchings: " << all.size() << "\n";
      for (std::size_t i = 0; i < all.size(); ++i) {
        out << "# " << i + 1 << "\n" << serialize_stable_matching(all[i]);
      }
      return kOk;
    }});
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  engine_ptr = std::make_unique<RoundEngine>(
      seq ? ExecMode::Sequential : ExecMode::Parallel, workers);
  int code = kUsage;
  try {
    for (const auto& cmd : commands) {
      if (cmd.app->parsed()) {
        code = cmd.run();
        break;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  if (stats) {
    for (const auto& ph : engine().stats().snapshot()) {
      err << "stats " << ph.name << " rounds " << ph.rounds << " ops " << ph.ops
          << "\n";
    }
  }
  return code;
}

} // namespace popmatch::cli
