#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "synthfun/problems.hpp"
#include "synthfun/render.hpp"
#include "synthfun/search.hpp"

namespace synth {

struct RunReport {
  enum class Outcome { Solved, Exhausted, Error };
  Outcome outcome = Outcome::Error;
  std::string program_text;
  int function_count = 0;
  long long states_visited = 0;
  double wall_seconds = 0.0;
  int depth_reached = 0;
  std::string error;
  InducedProgram program;  // valid when Solved
};

inline int exit_code(RunReport::Outcome o) {
  switch (o) {
    case RunReport::Outcome::Solved: return 0;
    case RunReport::Outcome::Exhausted: return 2;
    case RunReport::Outcome::Error: return 1;
  }
  return 1;
}

// Parse, split, build templates, evaluate examples, search, report.
inline RunReport run_source(const std::string& text, const std::string& path,
                            const SearchConfig& cfg,
                            bool identity_template = false) {
  RunReport rep;
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    SourceFile file = parse_source(text, path);
    Knowledge k = build_knowledge(file, identity_template, cfg.fuel);
    SearchEngine engine(k, cfg);
    SearchResult res = engine.run();
    rep.states_visited = res.states_visited;
    rep.depth_reached = res.depth_reached;
    rep.wall_seconds = elapsed();
    if (res.outcome == SearchResult::Outcome::Solved) {
      rep.outcome = RunReport::Outcome::Solved;
      rep.program = res.program;
      rep.program_text = render_program(res.program);
      rep.function_count = static_cast<int>(res.program.functions.size());
    } else {
      // A timed-out run reports exhausted, with the timeout as its wall time.
      rep.outcome = RunReport::Outcome::Exhausted;
      if (res.outcome == SearchResult::Outcome::TimedOut)
        rep.wall_seconds = cfg.timeout_seconds;
    }
  } catch (const std::exception& e) {
    rep.outcome = RunReport::Outcome::Error;
    rep.error = e.what();
    rep.wall_seconds = elapsed();
  }
  return rep;
}

inline RunReport run_file(const std::string& path, const SearchConfig& cfg,
                          bool identity_template = false) {
  std::ifstream in(path);
  if (!in) {
    RunReport rep;
    rep.outcome = RunReport::Outcome::Error;
    rep.error = "cannot open '" + path + "'";
    return rep;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_source(buf.str(), path, cfg, identity_template);
}

struct BenchSpec {
  std::string problem;
  int param = 0;
  int repeats = 5;
  SearchConfig config;
};

struct BenchRow {
  std::string problem;
  bool reuse = true;
  Algorithm algorithm = Algorithm::Branching;
  double mean_seconds = 0.0;
  double stderr_seconds = 0.0;
  int functions = 0;          // 0 when not solved
  long long states_visited = 0;
};

inline std::string csv_header() {
  return "problem,reuse,algorithm,mean_seconds,stderr_seconds,functions,"
         "states_visited";
}

inline std::string to_csv(const BenchRow& r) {
  std::ostringstream out;
  out << r.problem << ',' << (r.reuse ? "true" : "false") << ','
      << (r.algorithm == Algorithm::Linear ? "linear" : "branching") << ','
      << r.mean_seconds << ',' << r.stderr_seconds << ',' << r.functions << ','
      << r.states_visited;
  return out.str();
}

// Runs a problem `repeats` times with reuse on and off; repetitions run
// sequentially to keep timings honest. Standard error is the sample standard
// deviation divided by sqrt(repeats).
inline std::vector<BenchRow> bench(const BenchSpec& spec) {
  std::string label = spec.problem;
  if (spec.problem == "addN" || spec.problem == "maze" ||
      spec.problem == "droplasts")
    label += "(" + std::to_string(spec.param) + ")";
  std::string src = generate_problem(spec.problem, spec.param);

  std::vector<BenchRow> rows;
  for (bool reuse : {true, false}) {
    SearchConfig cfg = spec.config;
    cfg.reuse = reuse;
    BenchRow row;
    row.problem = label;
    row.reuse = reuse;
    row.algorithm = cfg.algorithm;
    std::vector<double> times;
    for (int i = 0; i < spec.repeats; ++i) {
      RunReport rep = run_source(src, label, cfg);
      times.push_back(rep.wall_seconds);
      row.functions =
          rep.outcome == RunReport::Outcome::Solved ? rep.function_count : 0;
      row.states_visited = rep.states_visited;
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    if (times.size() > 1) {
      for (double t : times) var += (t - mean) * (t - mean);
      var /= static_cast<double>(times.size() - 1);
    }
    row.mean_seconds = mean;
    row.stderr_seconds = std::sqrt(var / static_cast<double>(times.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace synth
