// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

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
#include "testutil.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace popmatch;
using boost::multiprecision::cpp_int;
using testutil::data_path;

namespace {

// Collects failures for one criterion; the first few are printed.
class Check {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (failures_ < 3) {
        notes_ += (notes_.empty() ? "" : "; ") + what;
      }
      ++failures_;
    }
  }
  void count() { ++checked_; }
  std::size_t failures() const { return failures_; }
  std::size_t checked() const { return checked_; }
  const std::string& notes() const { return notes_; }

private:
  std::size_t failures_ = 0;
  std::size_t checked_ = 0;
  std::string notes_;
};

struct AcceptanceCase {
  int id;
  std::string name;
  double limit_s; // 0 = no runtime limit
  std::function<void(Check&)> body;
};

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int c = cli::dispatch(args, out, err);
  if (code) {
    *code = c;
  }
  return out.str();
}

std::optional<PrefInstance> random_solvable(std::mt19937_64& rng) {
  GenOptions opts;
  opts.applicants = 1 + rng() % 7;
  opts.posts = 1 + rng() % 7;
  opts.max_len = std::min<std::size_t>(opts.posts, 1 + rng() % 4);
  opts.seed = rng();
  auto inst = gen_random(opts);
  if (!solve_popular(inst)) {
    return std::nullopt;
  }
  return inst;
}

// Profile from the lists, independent of profile_of.
Profile recount(const Matching& m, const PrefInstance& inst) {
  Profile p;
  p.x.assign(inst.num_posts() + 1, 0);
  for (std::size_t a = 0; a < m.num_applicants(); ++a) {
    const int r = inst.rank(static_cast<ApplicantId>(a), m.post_of(static_cast<ApplicantId>(a)));
    const PostId post = m.post_of(static_cast<ApplicantId>(a));
    const bool real = post != kNoPost && !inst.is_last_resort(post);
    ++p.x[real ? r - 1 : inst.num_posts()];
  }
  return p;
}

cpp_int big_weight(const Profile& p, std::size_t n1, bool fair) {
  const std::size_t n2 = p.x.size() - 1;
  const cpp_int base = n1;
  cpp_int total = 0;
  for (std::size_t k = 1; k <= n2 + 1; ++k) {
    cpp_int w = 0;
    if (fair) {
      w = boost::multiprecision::pow(base, static_cast<unsigned>(k));
    } else if (k <= n2) {
      w = boost::multiprecision::pow(base, static_cast<unsigned>(n2 - k + 1));
    }
    total += w * p.x[k - 1];
  }
  return total;
}

// ---------------------------------------------------------------------------

void popular_golden(Check& c) {
  int code = 0;
  const auto reduced = run_cli({"pm", "reduce", data_path("golden_pm.txt")}, &code);
  c.count();
  c.expect(code == 0, "pm reduce exit code");
  c.expect(reduced ==
               "f-posts: p1 p4 p5 p7\n"
               "s-posts: p2 p3 p6 p8 p9\n"
               "a1: p1 p2\na2: p4 p2\na3: p4 p3\na4: p1 p3\n"
               "a5: p5 p2\na6: p7 p6\na7: p7 p8\na8: p7 p9\n",
           "pm reduce output differs");

  const auto inst = testutil::load_instance("golden_pm.txt");
  const auto solved = run_cli({"pm", "solve", data_path("golden_pm.txt")}, &code);
  c.expect(code == 0, "pm solve exit code");
  const auto m = parse_matching(solved, inst);
  c.expect(is_popular(m, inst).popular, "characterization rejects output");
  c.expect(brute_force_popular(inst, m, true), "oracle rejects output");
  c.expect(m == testutil::load_matching("golden_pm_m.txt", inst), "output differs from expected");
}

void switching_golden(Check& c) {
  const auto inst = testutil::load_instance("golden_pm.txt");
  const auto m = testutil::load_matching("golden_pm_m.txt", inst);
  const auto g = reduce(inst);
  const auto comps = decompose(build_switching_graph(g, m));
  std::vector<std::vector<PostId>> cycles;
  std::vector<std::vector<PostId>> paths;
  std::vector<PostId> sinks;
  for (const auto& comp : comps) {
    if (comp.cycle) {
      std::vector<PostId> v;
      for (const auto& e : comp.cycle->edges) {
        v.push_back(e.from);
      }
      cycles.push_back(v);
    } else {
      sinks.push_back(comp.sink);
      for (const auto& p : comp.paths) {
        std::vector<PostId> v;
        for (const auto& e : p.edges) {
          v.push_back(e.from);
        }
        v.push_back(p.edges.back().to);
        paths.push_back(v);
      }
    }
  }
  c.expect(cycles == std::vector<std::vector<PostId>>{{0, 1, 3, 2}}, "cycle differs");
  c.expect(paths == std::vector<std::vector<PostId>>{{7, 6, 5}, {8, 6, 5}},
           "paths differ");
  c.expect(sinks == std::vector<PostId>{5}, "sink differs");
  for (const auto& x : popular_matchings_by_switching(g, m)) {
    c.count();
    c.expect(is_popular(x, inst).popular, "move subset not popular");
  }
  c.expect(c.checked() == 6, "expected 2 x 3 move choices");
}

void round_bound(Check& c) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    GenOptions opts;
    opts.applicants = 1 + rng() % 256;
    opts.posts = 1 + rng() % 256;
    opts.max_len = std::min<std::size_t>(opts.posts, 1 + rng() % 8);
    opts.seed = rng();
    const auto inst = gen_random(opts);
    const auto res = solve_popular(inst);
    c.count();
    c.expect(res.acm.peel_rounds <= ceil_log2(res.acm.vertex_count) + 1,
             "seed " + std::to_string(opts.seed) + ": " +
                 std::to_string(res.acm.peel_rounds) + " rounds");
  }
}

void characterization_exhaustive(Check& c) {
  for (std::size_t a = 1; a <= 4; ++a) {
    for (std::size_t p = 1; p <= 4; ++p) {
      testutil::for_each_small_instance(a, p, 3, [&](const PrefInstance& inst) {
        const auto g = reduce(inst);
        for (const auto& m : enumerate_matchings(inst, true)) {
          c.count();
          if (is_popular(m, inst, g).popular != brute_force_popular(inst, m, true)) {
            c.expect(false, serialize_instance(inst) + serialize_matching(m, inst));
          }
        }
      });
    }
  }
}

void switching_family(Check& c) {
  std::mt19937_64 rng(7001);
  while (c.checked() < 200) {
    const auto inst = random_solvable(rng);
    if (!inst) {
      continue;
    }
    c.count();
    const auto m = *solve_popular(*inst).matching;
    const auto all = enumerate_popular(*inst);
    c.expect(popular_matchings_by_switching(reduce(*inst), m) == all,
             "move set differs:\n" + serialize_instance(*inst));
    std::size_t best = 0;
    for (const auto& x : all) {
      best = std::max(best, x.size());
    }
    c.expect(max_cardinality(*inst, m).size() == best,
             "max cardinality differs:\n" + serialize_instance(*inst));
  }
}

void optimal_family(Check& c) {
  std::mt19937_64 rng(7001);
  while (c.checked() < 200) {
    const auto inst = random_solvable(rng);
    if (!inst) {
      continue;
    }
    c.count();
    const auto m = *solve_popular(*inst).matching;
    const auto all = enumerate_popular(*inst);
    Profile best_r = recount(all[0], *inst);
    Profile best_f = best_r;
    cpp_int max_r = big_weight(best_r, inst->num_applicants(), false);
    cpp_int min_f = big_weight(best_f, inst->num_applicants(), true);
    std::size_t max_size = 0;
    for (const auto& x : all) {
      const auto p = recount(x, *inst);
      best_r = rank_maximal_better(p, best_r) ? p : best_r;
      best_f = fair_better(p, best_f) ? p : best_f;
      max_r = std::max(max_r, big_weight(p, inst->num_applicants(), false));
      min_f = std::min(min_f, big_weight(p, inst->num_applicants(), true));
      max_size = std::max(max_size, x.size());
    }
    const auto rm = optimal_popular(*inst, m, Criterion::RankMaximal);
    const auto fair = optimal_popular(*inst, m, Criterion::Fair);
    const auto label = "\n" + serialize_instance(*inst);
    c.expect(recount(rm, *inst) == best_r, "rank-maximal profile" + label);
    c.expect(recount(fair, *inst) == best_f, "fair profile" + label);
    c.expect(big_weight(recount(rm, *inst), inst->num_applicants(), false) == max_r,
             "rank-maximal weight" + label);
    c.expect(big_weight(recount(fair, *inst), inst->num_applicants(), true) == min_f,
             "fair weight" + label);
    c.expect(fair.size() == max_size, "fair not maximum" + label);
  }
}

void ties_equivalence(Check& c) {
  auto one = [&](const BipartiteGraph& g) {
    c.count();
    const auto rep = check_equivalence(g);
    c.expect(rep.holds && rep.identity_violations == 0,
             rep.reason + "\n" + serialize_bipartite(g));
  };
  for (std::size_t l = 1; l <= 3; ++l) {
    for (std::size_t r = 1; r <= 3; ++r) {
      testutil::for_each_graph(l, r, one);
    }
  }
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t left = 1 + rng() % 5;
    const std::size_t right = 1 + rng() % 5;
    const int density = 1 + static_cast<int>(rng() % 4);
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t u = 0; u < left; ++u) {
      for (std::size_t v = 0; v < right; ++v) {
        if (static_cast<int>(rng() % 5) < density) {
          edges.emplace_back(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v));
        }
      }
    }
    one(BipartiteGraph(left, right, edges));
  }
}

void next_stable_golden(Check& c) {
  const auto inst = testutil::load_stable("golden_sm.txt");
  const auto m = testutil::load_stable_matching("golden_sm_m.txt", inst);
  const std::vector<std::vector<WomanId>> expected_lists{
      {7, 2}, {2, 5}, {4, 0, 5, 1}, {5, 7, 4},
      {6, 1, 0, 2, 5}, {0, 4, 1, 2}, {1, 4, 6, 7, 0}, {3, 1, 5}};
  c.count();
  c.expect(reduced_lists(inst, m).lists == expected_lists, "reduced lists differ");
  c.expect(build_h(inst, m).next == std::vector<ManId>{1, 3, 5, 0, 6, 2, 2, 6},
           "H_M edges differ");

  int code = 0;
  const auto text = run_cli({"sm", "next", data_path("golden_sm.txt"), data_path("golden_sm_m.txt")},
                            &code);
  c.expect(code == 0, "sm next exit code");
  // Blocks are separated by a blank line; each is a rotation line and a matching.
  std::vector<std::string> blocks(1);
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) {
      blocks.emplace_back();
    } else if (line.rfind("rotation:", 0) != 0) {
      blocks.back() += line + "\n";
    }
  }
  c.expect(blocks.size() == 2, "expected two matchings");
  for (const auto& b : blocks) {
    const auto next = parse_stable_matching(b, inst);
    c.expect(is_stable(inst, next), "result not stable");
    c.expect(immediate_dominance_check(inst, m, next), "not immediately dominated");
  }
}

void lattice_coverage(Check& c) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_stable_instance(1 + seed % 7, 9000 + seed);
    c.count();
    const auto expect = enumerate_stable(inst);
    c.expect(enumerate_via_rotations(inst) == expect,
             "seed " + std::to_string(9000 + seed) + ": lattice differs");
    for (const auto& m : expect) {
      for (const auto& next : next_stable(inst, m).matchings) {
        c.expect(immediate_dominance_check(inst, m, next),
                 "seed " + std::to_string(9000 + seed) + ": step skips a matching");
      }
    }
  }
}

// Runs the installed binary so both modes go through a fresh process.
std::string shell(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) {
    return "<popen failed>";
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
    out.append(buf, n);
  }
  const int status = pclose(p);
  return out + "\n<status " + std::to_string(status) + ">";
}

void determinism(Check& c) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "popmatch_acceptance";
  fs::create_directories(dir);
  const std::string bin = POPMATCH_CLI;
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };

  const auto big = write("big.txt", run_cli({"pm", "gen", "--applicants", "1500",
                                             "--posts", "2500", "--seed", "3",
                                             "--max-len", "5"}));
  const auto big_m = write("big_m.txt", run_cli({"pm", "solve", big}));
  const auto stable = write("stable.txt",
                            serialize_stable_instance(random_stable_instance(60, 4)));
  const auto stable_m = write("stable_m.txt", run_cli({"sm", "gale-shapley", stable}));
  const auto small = write("small.txt", run_cli({"pm", "gen", "--applicants", "6",
                                                 "--posts", "5", "--seed", "12",
                                                 "--max-len", "3"}));
  const auto pm = data_path("golden_pm.txt");
  const auto pm_m = data_path("golden_pm_m.txt");
  const auto sm = data_path("golden_sm.txt");
  const auto sm_m = data_path("golden_sm_m.txt");
  const auto graph = data_path("path_graph.txt");

  const std::vector<std::string> commands{
      "pm solve " + pm,
      "pm solve " + big,
      "pm solve " + data_path("infeasible.txt"),
      "pm reduce " + big,
      "pm verify " + big + " " + big_m,
      "pm switching " + pm + " " + pm_m,
      "pm switching " + big + " " + big_m,
      "pm max " + big,
      "pm optimal --criterion rank-maximal " + big,
      "pm optimal --criterion fair " + big,
      "pm gen --applicants 50 --posts 40 --seed 8 --ties",
      "pm from-bipartite " + graph,
      "pm check-equivalence " + graph,
      "pm oracle " + small,
      "pm oracle " + pm + " " + pm_m,
      "sm gale-shapley " + stable,
      "sm next " + sm + " " + sm_m,
      "sm next " + stable + " " + stable_m,
      "sm enumerate " + sm,
      "sm oracle " + sm + " " + sm_m,
  };
  for (const auto& cmd : commands) {
    c.count();
    const auto reference = shell(bin + " --stats --seq " + cmd);
    for (int rep = 0; rep < 10; ++rep) {
      c.expect(shell(bin + " --stats --seq " + cmd) == reference, "--seq run differs: " + cmd);
      c.expect(shell(bin + " --stats " + cmd) == reference, "parallel run differs: " + cmd);
    }
  }
}

} // namespace

int main() {
  const std::vector<AcceptanceCase> criteria{
      {1, "popular matching golden", 1.0, popular_golden},
      {2, "switching graph golden", 0, switching_golden},
      {3, "peel round bound", 30.0, round_bound},
      {4, "characterization vs oracle, exhaustive", 0, characterization_exhaustive},
      {5, "move subsets and max cardinality", 0, switching_family},
      {6, "rank-maximal and fair", 0, optimal_family},
      {7, "rank-one popular = maximum", 0, ties_equivalence},
      {8, "next stable matching golden", 5.0, next_stable_golden},
      {9, "stable lattice coverage", 0, lattice_coverage},
      {10, "sequential/parallel determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      check.expect(false, "runtime limit exceeded");
    }
    const bool ok = check.failures() == 0;
    failed += !ok;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name
              << " (" << check.checked() << " cases, " << timing << ")";
    if (!ok) {
      std::cout << " " << check.failures() << " failures: " << check.notes();
    }
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
