// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exits non-zero when any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "synthfun/problems.hpp"
#include "synthfun/render.hpp"
#include "synthfun/runner.hpp"
#include "synthfun/search.hpp"

using namespace synth;

namespace {

#ifndef SYNTHFUN_SAMPLES_DIR
#define SYNTHFUN_SAMPLES_DIR "samples"
#endif

bool g_all_ok = true;

void report(int num, const std::string& name, bool ok, const std::string& detail) {
  printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
         detail.empty() ? "" : " -- ", detail.c_str());
  fflush(stdout);
  if (!ok) g_all_ok = false;
}

struct MatrixEntry {
  std::string label;
  std::string source;
  bool identity = false;
  RunReport rep;
};

std::vector<MatrixEntry> g_matrix;  // solved runs, for the property suite

RunReport run_and_record(const std::string& label, const std::string& src,
                         const SearchConfig& cfg, bool identity = false) {
  RunReport rep = run_source(src, label, cfg, identity);
  g_matrix.push_back(MatrixEntry{label, src, identity, rep});
  return rep;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_body(const InducedProgram& p, const std::string& rendered) {
  for (const auto& f : p.functions) {
    std::vector<ExprPtr> args;
    ExprPtr head = f.body;
    while (head->kind == Expr::Kind::Apply) {
      args.insert(args.begin(), head->e2);
      head = head->e1;
    }
    std::string text;
    if (head->kind != Expr::Kind::Var) continue;
    if (args.empty()) {
      text = head->name;
    } else if (head->name == "comp" && args.size() == 2 &&
               args[0]->kind == Expr::Kind::Var &&
               args[1]->kind == Expr::Kind::Var) {
      text = args[0]->name + "." + args[1]->name;
    } else {
      text = head->name;
      for (const auto& a : args)
        if (a->kind == Expr::Kind::Var) text += " " + a->name;
    }
    if (text == rendered) return true;
  }
  return false;
}

int max_users(const InducedProgram& p) {
  std::map<std::string, int> users;
  for (const auto& f : p.functions)
    for (const auto& n : free_names(f.body))
      if (p.find(n)) ++users[n];
  int best = 0;
  for (const auto& [k, v] : users) best = std::max(best, v);
  return best;
}

void criterion1_add8() {
  std::string path = std::string(SYNTHFUN_SAMPLES_DIR) + "/add8.fun";
  std::string src = read_file(path);
  std::ostringstream detail;
  bool ok = !src.empty();

  SearchConfig cfg;
  RunReport reuse = run_and_record("add8/reuse", src, cfg);
  ok = ok && reuse.outcome == RunReport::Outcome::Solved &&
       reuse.function_count == 3 && reuse.wall_seconds < 10.0;
  const std::string expected =
      "g3 = BK_addOne.BK_addOne\n"
      "g2 = g3.g3\n"
      "target = g2.g2\n";
  ok = ok && canonical_text(reuse.program) == expected;

  SearchConfig no_reuse = cfg;
  no_reuse.reuse = false;
  RunReport inv = run_and_record("add8/no-reuse", src, no_reuse);
  ok = ok && inv.outcome == RunReport::Outcome::Solved &&
       inv.function_count == 7 && inv.wall_seconds < 10.0;

  detail << "reuse " << reuse.function_count << " fns ("
         << reuse.wall_seconds << " s), no-reuse " << inv.function_count
         << " fns (" << inv.wall_seconds << " s)";
  report(1, "add8 reproduction (Table 5.1 structure, counts 3 vs 7)", ok,
         detail.str());
}

void criterion2_addn_scaling() {
  bool ok = true;
  std::ostringstream detail;
  std::vector<long long> states_r, states_n;
  std::vector<double> time_r, time_n;
  std::vector<int> count_r, count_n;
  for (int n = 4; n <= 10; ++n) {
    std::string src = generate_problem("addN", n);
    SearchConfig cfg;
    cfg.max_depth = 12;
    RunReport r = run_and_record("addN(" + std::to_string(n) + ")/reuse", src, cfg);
    SearchConfig cfg_n = cfg;
    cfg_n.reuse = false;
    RunReport nn =
        run_and_record("addN(" + std::to_string(n) + ")/no-reuse", src, cfg_n);
    ok = ok && r.outcome == RunReport::Outcome::Solved &&
         nn.outcome == RunReport::Outcome::Solved;
    if (!ok) break;
    count_r.push_back(r.function_count);
    count_n.push_back(nn.function_count);
    states_r.push_back(r.states_visited);
    states_n.push_back(nn.states_visited);
    time_r.push_back(r.wall_seconds);
    time_n.push_back(nn.wall_seconds);
    ok = ok && r.function_count <= nn.function_count;
  }
  if (ok) {
    // no-reuse work is monotonically non-decreasing in N (states are an
    // exact deterministic measure; wall time gets a noise margin)
    for (std::size_t i = 1; i < states_n.size(); ++i) {
      ok = ok && states_n[i] >= states_n[i - 1];
      ok = ok && time_n[i] >= 0.5 * time_n[i - 1];
    }
    // reuse stays cheap while no-reuse grows steeply
    for (double t : time_r) ok = ok && t < 10.0;
    double growth_r = double(states_r.back()) / double(states_r.front());
    double growth_n = double(states_n.back()) / double(states_n.front());
    ok = ok && growth_r < growth_n;
    detail << "reuse states x" << growth_r << ", no-reuse states x" << growth_n;
  }

  // N = 16 under a 60 s desk-scale budget
  std::string src16 = generate_problem("addN", 16);
  SearchConfig cfg16;
  cfg16.max_depth = 16;
  cfg16.timeout_seconds = 60.0;
  RunReport r16 = run_and_record("addN(16)/reuse", src16, cfg16);
  ok = ok && r16.outcome == RunReport::Outcome::Solved &&
       r16.wall_seconds < 60.0;
  SearchConfig cfg16n = cfg16;
  cfg16n.reuse = false;
  RunReport n16 = run_and_record("addN(16)/no-reuse", src16, cfg16n);
  ok = ok && n16.outcome == RunReport::Outcome::Exhausted;
  detail << "; N=16 reuse " << (r16.outcome == RunReport::Outcome::Solved
                                    ? "solved"
                                    : "failed")
         << " in " << r16.wall_seconds << " s, no-reuse "
         << (n16.outcome == RunReport::Outcome::Exhausted ? "exhausted"
                                                          : "solved");
  report(2, "addN scaling (counts, monotone no-reuse cost, N=16 split)", ok,
         detail.str());
}

void criterion3_maze() {
  bool ok = true;
  std::ostringstream detail;

  std::string src4 = generate_problem("maze", 4);
  SearchConfig cfg;
  RunReport r4 = run_and_record("maze(4)/reuse", src4, cfg);
  ok = ok && r4.outcome == RunReport::Outcome::Solved &&
       r4.function_count == 3 &&
       has_body(r4.program, "BK_mRight.BK_mUp");
  SearchConfig cfg_n = cfg;
  cfg_n.reuse = false;
  RunReport n4 = run_and_record("maze(4)/no-reuse", src4, cfg_n);
  ok = ok && n4.outcome == RunReport::Outcome::Solved && n4.function_count == 5;
  detail << "4x4: " << r4.function_count << " vs " << n4.function_count
         << " fns";

  for (int size : {6, 8}) {
    std::string src = generate_problem("maze", size);
    SearchConfig fast;
    fast.timeout_seconds = 60.0;
    RunReport r = run_and_record(
        "maze(" + std::to_string(size) + ")/reuse", src, fast);
    ok = ok && r.outcome == RunReport::Outcome::Solved && r.wall_seconds < 60.0;
    // The paper gives no-reuse a 600 s budget; 60 s suffices at desk scale
    // because the no-reuse state space at the required depth is orders of
    // magnitude beyond either budget.
    SearchConfig slow = fast;
    slow.reuse = false;
    slow.max_depth = 16;
    RunReport nr = run_and_record(
        "maze(" + std::to_string(size) + ")/no-reuse", src, slow);
    ok = ok && nr.outcome == RunReport::Outcome::Exhausted;
    detail << "; " << size << "x" << size << " reuse " << r.wall_seconds
           << " s, no-reuse "
           << (nr.outcome == RunReport::Outcome::Exhausted ? "exhausted"
                                                           : "solved");
  }
  report(3, "maze (3 fns with mRight.mUp block vs 5; larger mazes split)", ok,
         detail.str());
}

void criterion4_droplasts() {
  bool ok = true;
  std::ostringstream detail;

  std::string src = generate_problem("droplasts", 0);
  SearchConfig cfg;
  RunReport r = run_and_record("droplasts/reuse", src, cfg);
  const std::string expected =
      "g4 = BK_reverse.BK_tail\n"
      "g3 = g4.BK_reverse\n"
      "g2 = map g3\n"
      "target = g2.g3\n";
  ok = ok && r.outcome == RunReport::Outcome::Solved && r.function_count == 4 &&
       canonical_text(r.program) == expected;
  SearchConfig cfg_n = cfg;
  cfg_n.reuse = false;
  RunReport nr = run_and_record("droplasts/no-reuse", src, cfg_n);
  ok = ok && nr.outcome == RunReport::Outcome::Exhausted ? false : ok;
  ok = ok && nr.outcome == RunReport::Outcome::Solved && nr.function_count == 6;
  detail << "reuse " << r.function_count << " fns, no-reuse "
         << nr.function_count << " fns";

  // Fig 5.2 trend: more background noise, more work (monotone, with a noise
  // margin on wall time; visited states are deterministic)
  long long prev_states = -1;
  double prev_time = 0.0;
  for (int noise = 0; noise <= 8; ++noise) {
    std::string s = generate_problem("droplasts", noise);
    RunReport rep = run_and_record(
        "droplasts(noise=" + std::to_string(noise) + ")/reuse", s, cfg);
    ok = ok && rep.outcome == RunReport::Outcome::Solved;
    ok = ok && rep.states_visited >= prev_states;
    ok = ok && rep.wall_seconds >= 0.5 * prev_time;
    prev_states = rep.states_visited;
    prev_time = rep.wall_seconds;
  }
  detail << "; noise 0->8 states end at " << prev_states;
  report(4, "droplasts (Table 5.1 reuse structure, 4 vs 6 fns, noise trend)",
         ok, detail.str());
}

void criterion5_filterupnum() {
  std::string src = generate_problem("filterUpNum", 0);
  SearchConfig cfg;
  RunReport r = run_and_record("filterUpNum/reuse", src, cfg);
  SearchConfig cfg_n = cfg;
  cfg_n.reuse = false;
  RunReport nr = run_and_record("filterUpNum/no-reuse", src, cfg_n);
  bool ok = r.outcome == RunReport::Outcome::Solved &&
            nr.outcome == RunReport::Outcome::Solved &&
            r.function_count == 4 && nr.function_count == 4 &&
            r.program_text == nr.program_text;
  std::ostringstream detail;
  detail << "both modes " << r.function_count << " fns, identical: "
         << (r.program_text == nr.program_text ? "yes" : "no");
  report(5, "filterUpNum (both modes return the identical 4-function program)",
         ok, detail.str());
}

void criterion6_addrevfilter() {
  std::string src = generate_problem("addRevFilter", 0);
  SearchConfig cfg;
  RunReport r = run_and_record("addRevFilter/reuse", src, cfg);
  SearchConfig cfg_n = cfg;
  cfg_n.reuse = false;
  RunReport nr = run_and_record("addRevFilter/no-reuse", src, cfg_n);

  bool ok = r.outcome == RunReport::Outcome::Solved &&
            nr.outcome == RunReport::Outcome::Solved &&
            r.function_count == 5 && nr.function_count == 5;

  // The reuse program applies `map add2` twice through a reused function and
  // never composes add2 with itself; the invention-only program composes
  // add2.add2 once, matching the Table 5.1 structure exactly.
  ok = ok && has_body(r.program, "map BK_add2") &&
       !has_body(r.program, "BK_add2.BK_add2") && max_users(r.program) >= 2;
  const std::string expected_inv =
      "g2 = filter BK_isOdd\n"
      "g5 = BK_add2.BK_add2\n"
      "g4 = map g5\n"
      "g3 = g4.BK_reverse\n"
      "target = g2.g3\n";
  ok = ok && canonical_text(nr.program) == expected_inv &&
       has_body(nr.program, "BK_add2.BK_add2");

  std::ostringstream detail;
  detail << "both 5 fns; reuse maps add2 twice: "
         << (has_body(r.program, "map BK_add2") && max_users(r.program) >= 2
                 ? "yes"
                 : "no");
  report(6, "addRevFilter (5 fns each; reuse maps add2 twice vs add2.add2)",
         ok, detail.str());
}

void criterion7_theorem42() {
  // The theorem: with {map, comp, identity} and reverse as the only
  // background function, the program {target = gen1.gen2; gen2 = map gen1;
  // gen1 = reverse} is in the branching algorithm's search space and outside
  // the linear algorithm's. Contradictory examples force both searches to
  // enumerate their whole bounded space, so the visited states are exactly
  // the reachable ones.
  std::string knowledge_src =
      "val comp(f, g) = lambda (x) f(g(x)) ;;\n"
      "rec map(f) = lambda (xs)\n"
      "  (if xs = nil then nil else f(head(xs)) : map(f)(tail(xs))) ;;\n"
      "val BK_reverse(xs) = reverse(xs) ;;\n";
  std::string enumerate_src = knowledge_src +
                              "PEx ([[1,2]]) => [[2,1]] ;;\n"
                              "PEx ([[1,2]]) => [[1,2]] ;;\n"
                              "Synthesize ([[Int]]) => [[Int]] ;;\n";
  Knowledge k = build_knowledge(parse_source(enumerate_src, "t"), true);
  const std::string wanted =
      "g2 = BK_reverse\n"
      "g3 = map g2\n"
      "target = g2.g3\n";

  auto visits = [&](Algorithm alg, int depth) {
    SearchConfig cfg;
    cfg.algorithm = alg;
    SearchEngine eng(k, cfg);
    bool seen = false;
    eng.on_visit = [&](const SearchEngine::Snapshot& s) {
      if (s.defined.size() != 3 || !s.undefined.empty()) return;
      for (const auto& d : s.defined)
        if (has_holes(d.body)) return;
      InducedProgram p;
      p.target_name = "target";
      for (const auto& d : s.defined)
        p.functions.push_back({d.name, d.body, "", true});
      try {
        if (canonical_text(p) == wanted) seen = true;
      } catch (const RenderError&) {
      }
    };
    eng.run_at_depth(depth);
    return seen;
  };

  bool branching_reaches = visits(Algorithm::Branching, 3);
  bool linear_reaches = visits(Algorithm::Linear, 3) || visits(Algorithm::Linear, 4);

  // On the real task both algorithms still solve (a two-function program
  // built from background fills is extensionally the same function), so the
  // incompleteness shows up as unreachability of the reuse structure.
  std::string real_src = knowledge_src +
                         "PEx ([[1,2],[3,4]]) => [[4,3],[2,1]] ;;\n"
                         "PEx ([[1,2,3],[4,5]]) => [[5,4],[3,2,1]] ;;\n"
                         "NEx ([[1,2],[3,4]]) => [[3,4],[1,2]] ;;\n"
                         "NEx ([[1,2],[3,4]]) => [[2,1],[4,3]] ;;\n"
                         "Synthesize ([[Int]]) => [[Int]] ;;\n";
  SearchConfig real_cfg;
  real_cfg.max_depth = 3;
  RunReport rb = run_and_record("reverseAll/branching", real_src, real_cfg, true);
  SearchConfig lin_cfg = real_cfg;
  lin_cfg.algorithm = Algorithm::Linear;
  RunReport rl = run_and_record("reverseAll/linear", real_src, lin_cfg, true);

  bool ok = branching_reaches && !linear_reaches &&
            rb.outcome == RunReport::Outcome::Solved &&
            rl.outcome == RunReport::Outcome::Solved;
  std::ostringstream detail;
  detail << "branching reaches gen1-reuse structure: "
         << (branching_reaches ? "yes" : "no")
         << ", linear reaches it: " << (linear_reaches ? "yes" : "no");
  report(7, "Theorem 4.2 regression (reuse structure only under deferred types)",
         ok, detail.str());
}

void criterion8_properties() {
  bool ok = true;
  std::ostringstream detail;

  // Soundness oracle over the whole benchmark matrix: every solved program
  // re-verified against its examples through the interpreter, independently
  // of the search path.
  int solved = 0;
  for (const auto& e : g_matrix) {
    if (e.rep.outcome != RunReport::Outcome::Solved) continue;
    ++solved;
    Knowledge k = build_knowledge(parse_source(e.source, e.label), e.identity);
    if (!oracle::is_solution(k, e.rep.program)) {
      ok = false;
      detail << "unsound: " << e.label << "; ";
    }
  }
  detail << solved << " solved runs re-verified";

  // Minimality by brute force on the tasks solvable with <= 3 functions.
  {
    Knowledge add8 = build_knowledge(
        parse_source(read_file(std::string(SYNTHFUN_SAMPLES_DIR) + "/add8.fun"),
                     "add8"));
    ok = ok && !oracle::any_solution_with_count(add8, 1) &&
         !oracle::any_solution_with_count(add8, 2);
    Knowledge maze4 =
        build_knowledge(parse_source(generate_problem("maze", 4), "maze"));
    ok = ok && !oracle::any_solution_with_count(maze4, 1) &&
         !oracle::any_solution_with_count(maze4, 2);
    Knowledge rev = build_knowledge(
        parse_source(read_file(std::string(SYNTHFUN_SAMPLES_DIR) +
                               "/reverse_all.fun"),
                     "rev"),
        true);
    ok = ok && !oracle::any_solution_with_count(rev, 1);
  }

  // Unification: most general unifiers over an enumerated small type space.
  {
    std::vector<TypePtr> atoms = {tvar("a"), tvar("b"), tint(), tbool()};
    std::vector<TypePtr> space = atoms;
    for (const auto& t : atoms) space.push_back(tlist(t));
    for (const auto& x : atoms)
      for (const auto& y : atoms) space.push_back(tarrow(x, y));
    for (const auto& x : space)
      for (const auto& y : space) {
        auto mgu = unify(x, y);
        if (mgu) {
          if (!type_equal(mgu->apply(x), mgu->apply(y))) ok = false;
          if (!type_equal(mgu->apply(mgu->apply(x)), mgu->apply(x))) ok = false;
        }
        for (const auto& ta : space)
          for (const auto& tb : space) {
            Subst sigma;
            if (!sigma.bind("a", ta) || !sigma.bind("b", tb)) continue;
            if (!type_equal(sigma.apply(x), sigma.apply(y))) continue;
            if (!mgu) {
              ok = false;  // an equalizer exists, unify must succeed
              continue;
            }
            for (const char* v : {"a", "b"})
              if (!type_equal(sigma.apply(mgu->apply(tvar(v))),
                              sigma.apply(tvar(v))))
                ok = false;
          }
      }
  }

  // Determinism: two identical runs are byte-identical.
  {
    std::string src = read_file(std::string(SYNTHFUN_SAMPLES_DIR) + "/add8.fun");
    SearchConfig cfg;
    RunReport a = run_source(src, "a", cfg);
    RunReport b = run_source(src, "b", cfg);
    ok = ok && a.program_text == b.program_text &&
         a.states_visited == b.states_visited &&
         a.depth_reached == b.depth_reached;
  }

  // Reuse-off tree shape: every invented non-target function has exactly one
  // user in invention-only solutions.
  for (const auto& e : g_matrix) {
    if (e.rep.outcome != RunReport::Outcome::Solved) continue;
    if (e.label.find("no-reuse") == std::string::npos) continue;
    std::map<std::string, int> users;
    for (const auto& f : e.rep.program.functions)
      for (const auto& n : free_names(f.body))
        if (e.rep.program.find(n)) ++users[n];
    for (const auto& f : e.rep.program.functions) {
      if (f.name == "target") continue;
      if (users[f.name] != 1) {
        ok = false;
        detail << "; non-tree no-reuse solution in " << e.label;
      }
    }
  }

  // Linear agreement and visit-count pruning on linear-only knowledge.
  {
    const char* nested =
        "rec map(f) = lambda (xs)\n"
        "  (if xs = nil then nil else f(head(xs)) : map(f)(tail(xs))) ;;\n"
        "rec filter(p) = lambda (xs)\n"
        "  (if xs = nil then nil else\n"
        "    if p(head(xs)) then head(xs) : filter(p)(tail(xs))\n"
        "    else filter(p)(tail(xs))) ;;\n"
        "val BK_add1(x) = x + 1 ;;\n"
        "rec BK_isOdd(x) = if x = 0 then false else\n"
        "  (if x = 1 then true else BK_isOdd(x - 2)) ;;\n"
        "PEx ([[1],[2,3]]) => [[2],[3,4]] ;;\n"
        "NEx ([[1],[2]]) => [[1],[2]] ;;\n"
        "Synthesize ([[Int]]) => [[Int]] ;;\n";
    Knowledge k = build_knowledge(parse_source(nested, "nested"));
    SearchConfig lin;
    lin.algorithm = Algorithm::Linear;
    SearchConfig bra;
    SearchResult rl = SearchEngine(k, lin).run();
    SearchResult rb = SearchEngine(k, bra).run();
    ok = ok && rl.outcome == SearchResult::Outcome::Solved &&
         rb.outcome == SearchResult::Outcome::Solved &&
         rl.program.functions.size() == rb.program.functions.size() &&
         rl.states_visited <= rb.states_visited;
    detail << "; linear/branching visits " << rl.states_visited << "/"
           << rb.states_visited;
  }

  report(8, "property suites (soundness, minimality, MGU, determinism, shape)",
         ok, detail.str());
}

}  // namespace

int main() {
  criterion1_add8();
  criterion2_addn_scaling();
  criterion3_maze();
  criterion4_droplasts();
  criterion5_filterupnum();
  criterion6_addrevfilter();
  criterion7_theorem42();
  criterion8_properties();
  printf("%s\n", g_all_ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return g_all_ok ? 0 : 1;
}
