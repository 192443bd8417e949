#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "synthfun/infer.hpp"
#include "synthfun/interp.hpp"
#include "synthfun/knowledge.hpp"

namespace synth {

enum class Algorithm { Linear, Branching };

struct SearchConfig {
  Algorithm algorithm = Algorithm::Branching;
  bool reuse = true;
  int max_depth = 8;              // bound on distinct invented functions
  bool target_type_pruning = true;  // Linear only
  long long fuel = 100000;        // evaluation steps per example
  double timeout_seconds = 600.0;
};

struct SearchResult {
  enum class Outcome { Solved, Exhausted, TimedOut };
  Outcome outcome = Outcome::Exhausted;
  InducedProgram program;        // valid when Solved
  long long states_visited = 0;
  int depth_reached = 0;
};

// Iterative-deepening search over program states. The depth measure is the
// number of distinct invented function names, so the first solution has the
// minimum possible number of functions.
//
// Expansion order (deterministic):
//   - holes are filled before anything is defined; the chosen hole is the
//     lowest index of the earliest-invented incomplete function;
//   - hole fillers: one fresh invention first, then previously invented
//     functions in invention order (reuse only; a filler must not use the
//     function being filled), then background functions in file order;
//   - defines pick the most recently invented undefined function and try
//     templates in file order.
// A_linear additionally requires the filler/template type to unify with the
// constraint recorded in the typing environment and rewrites the whole
// environment with the resulting substitution.
class SearchEngine {
 public:
  struct Snapshot {
    struct Def {
      std::string name;
      ExprPtr body;
    };
    std::vector<Def> defined;            // define order
    std::vector<std::string> undefined;  // pending, bottom of stack first
  };

  // Debug hook, called on every visited state when set.
  std::function<void(const Snapshot&)> on_visit;

  SearchEngine(const Knowledge& k, const SearchConfig& cfg)
      : k_(k), cfg_(cfg), goal_(k.examples.goal_type()) {}

  SearchResult run() {
    reset_run();
    SearchResult res;
    for (int d = 1; d <= cfg_.max_depth; ++d) {
      reset_state();
      depth_limit_ = d;
      bounded_ = false;
      bool found = false;
      if (cfg_.algorithm == Algorithm::Linear) {
        Layer layer;
        layer.invented.push_back(layer.fresh.fresh());
        found = dfs(&layer);
      } else {
        found = dfs(nullptr);
      }
      res.states_visited = visited_;
      res.depth_reached = d;
      if (found) {
        res.outcome = SearchResult::Outcome::Solved;
        res.program = solution_;
        return res;
      }
      if (timed_out_) {
        res.outcome = SearchResult::Outcome::TimedOut;
        return res;
      }
      if (!bounded_) break;  // depth bound never hit: deeper search is futile
    }
    res.outcome = SearchResult::Outcome::Exhausted;
    return res;
  }

  // Single bounded iteration, for tests.
  SearchResult run_at_depth(int depth) {
    reset_run();
    reset_state();
    depth_limit_ = depth;
    bounded_ = false;
    bool found = false;
    if (cfg_.algorithm == Algorithm::Linear) {
      Layer layer;
      layer.invented.push_back(layer.fresh.fresh());
      found = dfs(&layer);
    } else {
      found = dfs(nullptr);
    }
    SearchResult res;
    res.states_visited = visited_;
    res.depth_reached = depth;
    if (found) {
      res.outcome = SearchResult::Outcome::Solved;
      res.program = solution_;
    } else {
      res.outcome = timed_out_ ? SearchResult::Outcome::TimedOut
                               : SearchResult::Outcome::Exhausted;
    }
    return res;
  }

 private:
  using Clock = std::chrono::steady_clock;

  // Typing environment of A_linear: unquantified types of invented functions
  // plus the inferred type of every open hole. Quantified schemes (BK,
  // combinators, primitives) live in the knowledge and never change.
  struct Layer {
    std::vector<TypePtr> invented;               // indexed by name
    std::vector<std::pair<int, TypePtr>> holes;  // hole index -> type
    FreshVars fresh{1, "s"};

    const TypePtr& hole_type(int h) const {
      for (const auto& [idx, t] : holes)
        if (idx == h) return t;
      throw std::logic_error("unknown hole");
    }
    void remove_hole(int h) {
      for (std::size_t i = 0; i < holes.size(); ++i)
        if (holes[i].first == h) {
          holes.erase(holes.begin() + i);
          return;
        }
    }
    void apply(const Subst& s) {
      if (s.empty()) return;
      for (auto& t : invented) t = s.apply(t);
      for (auto& [idx, t] : holes) t = s.apply(t);
    }
  };

  struct Fn {
    int name;  // invention index
    ExprPtr body;
    int tmpl;  // index into knowledge templates
  };

  struct OpenHole {
    int owner;   // invention index of the function owning the hole
    int fn;      // index into funcs_
    int hole;    // hole number
  };

  const Knowledge& k_;
  SearchConfig cfg_;
  TypePtr goal_;

  std::vector<std::string> names_;
  std::vector<int> defined_at_;
  std::vector<Fn> funcs_;
  std::vector<int> undef_stack_;
  std::vector<std::pair<int, int>> edges_;  // (user, used), invention indices
  std::vector<OpenHole> open_holes_;
  int hole_counter_ = 1;
  int name_counter_ = 2;

  long long visited_ = 0;
  int depth_limit_ = 1;
  bool bounded_ = false;
  bool timed_out_ = false;
  Clock::time_point deadline_;
  InducedProgram solution_;

  void reset_run() {
    visited_ = 0;
    timed_out_ = false;
    hole_counter_ = 1;
    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(
                                       cfg_.timeout_seconds));
  }

  void reset_state() {
    names_ = {"target"};
    defined_at_ = {-1};
    funcs_.clear();
    undef_stack_ = {0};
    edges_.clear();
    open_holes_.clear();
    name_counter_ = 2;
  }

  // Transitive "uses" relation over the dependency graph.
  bool uses(int g, int f) const {
    if (g == f) return true;
    std::vector<int> stack{g};
    std::vector<char> seen(names_.size(), 0);
    seen[g] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& [user, used] : edges_) {
        if (user != u || seen[used]) continue;
        if (used == f) return true;
        seen[used] = 1;
        stack.push_back(used);
      }
    }
    return false;
  }

  void emit_snapshot() const {
    Snapshot s;
    for (const auto& fn : funcs_)
      s.defined.push_back(Snapshot::Def{names_[fn.name], fn.body});
    for (int idx : undef_stack_) s.undefined.push_back(names_[idx]);
    on_visit(s);
  }

  bool dfs(Layer* layer) {
    ++visited_;
    if ((visited_ & 1023) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return false;
    }
    if (on_visit) emit_snapshot();
    if (check(layer)) {
      solution_ = extract_program();
      return true;
    }
    if (timed_out_) return false;
    if (!open_holes_.empty()) return specialize_step(layer);
    if (!undef_stack_.empty()) return define_step(layer);
    return false;
  }

  std::size_t pick_hole() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < open_holes_.size(); ++i) {
      const OpenHole& a = open_holes_[i];
      const OpenHole& b = open_holes_[best];
      if (a.owner < b.owner || (a.owner == b.owner && a.hole < b.hole))
        best = i;
    }
    return best;
  }

  bool fill_and_recurse(std::size_t pick, const std::string& filler,
                        int induced_idx, Layer* next) {
    OpenHole oh = open_holes_[pick];
    ExprPtr old_body = funcs_[oh.fn].body;
    funcs_[oh.fn].body = fill_hole(old_body, oh.hole, filler);
    open_holes_.erase(open_holes_.begin() + pick);
    bool edge = induced_idx >= 0;
    if (edge) edges_.emplace_back(oh.owner, induced_idx);
    bool found = dfs(next);
    if (edge) edges_.pop_back();
    open_holes_.insert(open_holes_.begin() + pick, oh);
    funcs_[oh.fn].body = old_body;  // funcs_ may have been reallocated
    return found;
  }

  bool specialize_step(Layer* layer) {
    std::size_t pick = pick_hole();
    OpenHole oh = open_holes_[pick];

    // One fresh invention first.
    if (static_cast<int>(names_.size()) < depth_limit_) {
      int fresh_idx = static_cast<int>(names_.size());
      std::string fresh_name = "g" + std::to_string(name_counter_);
      std::optional<Layer> next;
      bool ok = true;
      if (layer) {
        next = *layer;
        TypePtr alpha = next->fresh.fresh();
        next->invented.push_back(alpha);
        ok = apply_fill_types(*next, oh.hole, alpha);
      }
      if (ok) {
        names_.push_back(fresh_name);
        defined_at_.push_back(-1);
        undef_stack_.push_back(fresh_idx);
        ++name_counter_;
        bool found =
            fill_and_recurse(pick, fresh_name, fresh_idx, next ? &*next : nullptr);
        --name_counter_;
        undef_stack_.pop_back();
        defined_at_.pop_back();
        names_.pop_back();
        if (found) return true;
        if (timed_out_) return false;
      }
    } else {
      bounded_ = true;
    }

    // Previously invented functions, invention order.
    if (cfg_.reuse) {
      int count = static_cast<int>(names_.size());
      for (int j = 0; j < count; ++j) {
        if (j == oh.owner || uses(j, oh.owner)) continue;
        std::optional<Layer> next;
        if (layer) {
          next = *layer;
          if (!apply_fill_types(*next, oh.hole, next->invented[j])) continue;
        }
        if (fill_and_recurse(pick, names_[j], j, next ? &*next : nullptr))
          return true;
        if (timed_out_) return false;
      }
    }

    // Background functions, file order.
    for (const BackgroundFn& bk : k_.background) {
      std::optional<Layer> next;
      if (layer) {
        next = *layer;
        TypePtr inst = instantiate(bk.scheme, next->fresh);
        if (!apply_fill_types(*next, oh.hole, inst)) continue;
      }
      if (fill_and_recurse(pick, bk.name, -1, next ? &*next : nullptr))
        return true;
      if (timed_out_) return false;
    }
    return false;
  }

  // Unifies the hole type with the filler type and rewrites the layer; also
  // applies the optional goal-type filter. False drops the successor.
  bool apply_fill_types(Layer& next, int hole_idx, const TypePtr& fill_type) {
    TypePtr hole_ty = next.hole_type(hole_idx);
    auto s = unify(hole_ty, fill_type);
    if (!s) return false;
    next.apply(*s);
    next.remove_hole(hole_idx);
    if (cfg_.target_type_pruning && !unifiable(next.invented[0], goal_))
      return false;
    return true;
  }

  bool define_step(Layer* layer) {
    int f = undef_stack_.back();
    undef_stack_.pop_back();
    bool found = false;
    for (std::size_t ti = 0; ti < k_.templates.size() && !found; ++ti) {
      const Template& tmpl = k_.templates[ti];
      std::optional<Layer> next;
      ExprPtr body;
      std::vector<std::pair<int, TypePtr>> new_holes;
      if (layer) {
        next = *layer;
        TemplateInstance inst =
            instantiate_template(tmpl, hole_counter_, next->fresh);
        auto s = unify(inst.body_type, next->invented[f]);
        if (!s) continue;
        next->apply(*s);
        for (auto& [h, t] : inst.hole_types)
          next->holes.emplace_back(h, s->apply(t));
        if (cfg_.target_type_pruning && !unifiable(next->invented[0], goal_))
          continue;
        body = inst.body;
        for (auto& [h, t] : inst.hole_types) new_holes.emplace_back(h, nullptr);
      } else {
        // A_branching disregards types while expanding.
        if (tmpl.identity) {
          int h = hole_counter_++;
          body = hole(h);
          new_holes.emplace_back(h, nullptr);
        } else {
          body = var(tmpl.name);
          for (int i = 0; i < tmpl.hole_count; ++i) {
            int h = hole_counter_++;
            body = apply(std::move(body), hole(h));
            new_holes.emplace_back(h, nullptr);
          }
        }
      }
      int fn_idx = static_cast<int>(funcs_.size());
      funcs_.push_back(Fn{f, body, static_cast<int>(ti)});
      defined_at_[f] = fn_idx;
      std::size_t base = open_holes_.size();
      for (const auto& [h, t] : new_holes)
        open_holes_.push_back(OpenHole{f, fn_idx, h});
      found = dfs(next ? &*next : nullptr);
      open_holes_.resize(base);
      defined_at_[f] = -1;
      funcs_.pop_back();
      if (timed_out_) break;
    }
    undef_stack_.push_back(f);
    return found;
  }

  // Topological order of the defined functions: dependencies first, ties
  // broken by invention order.
  std::vector<int> topo_order() const {
    std::size_t n = names_.size();
    std::vector<char> emitted(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (std::size_t round = 0; round < n; ++round) {
      int chosen = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (emitted[i]) continue;
        bool ready = true;
        for (const auto& [user, used] : edges_)
          if (user == static_cast<int>(i) && !emitted[used]) {
            ready = false;
            break;
          }
        if (ready) {
          chosen = static_cast<int>(i);
          break;
        }
      }
      if (chosen < 0) break;  // unreachable for acyclic graphs
      emitted[chosen] = 1;
      order.push_back(chosen);
    }
    return order;
  }

  bool check(const Layer* layer) {
    if (!open_holes_.empty() || !undef_stack_.empty() || funcs_.empty())
      return false;

    std::vector<int> order = topo_order();
    std::vector<InducedFunction> scratch(order.size());
    std::vector<const InducedFunction*> ordered;
    ordered.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Fn& fn = funcs_[defined_at_[order[i]]];
      scratch[i].name = names_[order[i]];
      scratch[i].body = fn.body;
      scratch[i].complete = true;
      ordered.push_back(&scratch[i]);
    }

    // The accepted set is the conjunction of typability, goal compatibility
    // and example satisfaction; evaluation runs first because it rejects
    // almost all candidates cheaply.
    EvalCtx ctx;
    ctx.globals = k_.values.get();
    std::vector<std::pair<std::string, ValuePtr>> overlay;
    ctx.fuel = cfg_.fuel;
    if (!load_program(ctx, overlay, ordered)) return false;
    ValuePtr target;
    for (const auto& [name, v] : overlay)
      if (name == "target") target = v;
    if (!target) return false;

    for (const auto& [in, out] : k_.examples.positives) {
      ctx.fuel = cfg_.fuel;
      ctx.error = nullptr;
      ValuePtr got = apply_value(ctx, target, in);
      if (!got || !value_equal(got, out)) return false;
    }
    for (const auto& [in, out] : k_.examples.negatives) {
      ctx.fuel = cfg_.fuel;
      ctx.error = nullptr;
      ValuePtr got = apply_value(ctx, target, in);
      if (!got || value_equal(got, out)) return false;
    }

    TypePtr target_type;
    if (layer) {
      target_type = layer->invented[0];  // typable by construction
    } else {
      FreshVars fresh;
      std::optional<TypeEnv> env;
      try {
        env = infer_program(k_.types, ordered, fresh);
      } catch (const UnboundName&) {
        return false;
      }
      if (!env) return false;
      target_type = instantiate(*env->lookup("target"), fresh);
    }
    return unifiable(target_type, goal_);
  }

  InducedProgram extract_program() const {
    InducedProgram p;
    p.target_name = "target";
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const Fn& fn = funcs_[defined_at_[i]];
      InducedFunction f;
      f.name = names_[i];
      f.body = fn.body;
      f.template_name = k_.templates[fn.tmpl].name;
      f.complete = true;
      p.functions.push_back(std::move(f));
    }
    return p;
  }
};

}  // namespace synth
