#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "synthfun/runner.hpp"

namespace {

const char* outcome_name(synth::RunReport::Outcome o) {
  switch (o) {
    case synth::RunReport::Outcome::Solved: return "solved";
    case synth::RunReport::Outcome::Exhausted: return "exhausted";
    case synth::RunReport::Outcome::Error: return "error";
  }
  return "?";
}

void print_report(const synth::RunReport& rep) {
  std::cerr << "outcome: " << outcome_name(rep.outcome) << "\n"
            << "functions: " << rep.function_count << "\n"
            << "states visited: " << rep.states_visited << "\n"
            << "depth reached: " << rep.depth_reached << "\n"
            << "wall time: " << rep.wall_seconds << " s\n";
  if (!rep.error.empty()) std::cerr << "error: " << rep.error << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesizes modular functional programs from examples"};

  std::string file;
  std::string algorithm = "branching";
  std::string bench_problem;
  std::string emit_problem;
  std::string csv_path;
  bool no_reuse = false;
  bool identity_template = false;
  bool target_type_pruning = true;
  int max_depth = 8;
  long long fuel = 100000;
  double timeout = 600.0;
  int param = -1;
  int repeats = 5;

  app.add_option("file", file, "Source file to synthesize from");
  app.add_flag("--no-reuse", no_reuse, "Disable reuse of invented functions");
  app.add_option("--algorithm", algorithm, "Search algorithm")
      ->check(CLI::IsMember({"linear", "branching"}))
      ->capture_default_str();
  app.add_option("--max-depth", max_depth, "Maximum number of invented functions")
      ->capture_default_str();
  app.add_option("--fuel", fuel, "Evaluation steps per example")
      ->capture_default_str();
  app.add_flag("--identity-template", identity_template,
               "Enable the identity template");
  app.add_flag("--target-type-pruning,!--no-target-type-pruning",
               target_type_pruning,
               "Prune on the target's goal type (linear algorithm)");
  app.add_option("--timeout", timeout, "Per-run timeout in seconds")
      ->capture_default_str();
  app.add_option("--bench", bench_problem,
                 "Benchmark problem: addN, filterUpNum, addRevFilter, maze, "
                 "droplasts");
  app.add_option("--param", param,
                 "Problem parameter (N / maze size / noise count)");
  app.add_option("--repeats", repeats, "Benchmark repetitions")
      ->capture_default_str();
  app.add_option("--csv", csv_path, "Write benchmark rows to this CSV file");
  app.add_option("--emit-problem", emit_problem,
                 "Print a generated problem file and exit");

  CLI11_PARSE(app, argc, argv);

  synth::SearchConfig cfg;
  cfg.algorithm = algorithm == "linear" ? synth::Algorithm::Linear
                                        : synth::Algorithm::Branching;
  cfg.reuse = !no_reuse;
  cfg.max_depth = max_depth;
  cfg.fuel = fuel;
  cfg.timeout_seconds = timeout;
  cfg.target_type_pruning = target_type_pruning;

  auto default_param = [](const std::string& p) {
    if (p == "addN") return 8;
    if (p == "maze") return 4;
    return 0;
  };

  try {
    if (!emit_problem.empty()) {
      int pr = param >= 0 ? param : default_param(emit_problem);
      std::cout << synth::generate_problem(emit_problem, pr);
      return 0;
    }

    if (!bench_problem.empty()) {
      synth::BenchSpec spec;
      spec.problem = bench_problem;
      spec.param = param >= 0 ? param : default_param(bench_problem);
      spec.repeats = repeats;
      spec.config = cfg;
      auto rows = synth::bench(spec);
      std::ostringstream out;
      out << synth::csv_header() << "\n";
      for (const auto& r : rows) out << synth::to_csv(r) << "\n";
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) {
          std::cerr << "error: cannot write '" << csv_path << "'\n";
          return 1;
        }
        f << out.str();
      }
      std::cout << out.str();
      return 0;
    }

    if (file.empty()) {
      std::cerr << "error: no input file (see --help)\n";
      return 1;
    }
    synth::RunReport rep = synth::run_file(file, cfg, identity_template);
    print_report(rep);
    if (rep.outcome == synth::RunReport::Outcome::Solved)
      std::cout << rep.program_text;
    return synth::exit_code(rep.outcome);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
