#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthfun/ast.hpp"

namespace synth {

class RenderError : public std::runtime_error {
 public:
  explicit RenderError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline void body_names_in_order(const ExprPtr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case Expr::Kind::Var: out.push_back(e->name); break;
    case Expr::Kind::Lambda: body_names_in_order(e->e1, out); break;
    case Expr::Kind::Apply:
      body_names_in_order(e->e1, out);
      body_names_in_order(e->e2, out);
      break;
    case Expr::Kind::If:
      body_names_in_order(e->e1, out);
      body_names_in_order(e->e2, out);
      body_names_in_order(e->e3, out);
      break;
    default: break;
  }
}

inline std::string render_body(const ExprPtr& e) {
  // Induced bodies are combinator applications over names (or a bare name
  // for identity-template bodies). Composition prints infix, the rest prefix.
  std::vector<ExprPtr> args;
  ExprPtr head = e;
  while (head->kind == Expr::Kind::Apply) {
    args.insert(args.begin(), head->e2);
    head = head->e1;
  }
  auto atom = [](const ExprPtr& x) -> std::string {
    if (x->kind == Expr::Kind::Var) return x->name;
    if (x->kind == Expr::Kind::Hole)
      throw RenderError("program is incomplete (hole " +
                        std::to_string(x->hole) + ")");
    return "(" + render_body(x) + ")";
  };
  if (head->kind == Expr::Kind::Hole)
    throw RenderError("program is incomplete (hole " +
                      std::to_string(head->hole) + ")");
  if (head->kind != Expr::Kind::Var)
    throw RenderError("unexpected induced body shape");
  if (args.empty()) return head->name;
  if (head->name == "comp" && args.size() == 2)
    return atom(args[0]) + "." + atom(args[1]);
  std::string out = head->name;
  for (const auto& a : args) out += " " + atom(a);
  return out;
}

}  // namespace detail

// Topological order of the program's functions: dependencies before
// dependents, ties broken by position in the program, target last.
inline std::vector<const InducedFunction*> program_topo_order(
    const InducedProgram& p) {
  std::size_t n = p.functions.size();
  std::set<std::string> induced;
  for (const auto& f : p.functions) induced.insert(f.name);
  std::vector<std::set<std::string>> deps(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> used;
    detail::body_names_in_order(p.functions[i].body, used);
    for (const auto& u : used)
      if (induced.count(u) && u != p.functions[i].name) deps[i].insert(u);
  }
  std::vector<char> emitted(n, 0);
  std::set<std::string> done;
  std::vector<const InducedFunction*> order;
  for (std::size_t round = 0; round < n; ++round) {
    int chosen = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (emitted[i]) continue;
      bool ready = true;
      for (const auto& d : deps[i])
        if (!done.count(d)) {
          ready = false;
          break;
        }
      if (ready) {
        chosen = static_cast<int>(i);
        break;
      }
    }
    if (chosen < 0) throw RenderError("cyclic induced program");
    emitted[chosen] = 1;
    done.insert(p.functions[chosen].name);
    order.push_back(&p.functions[chosen]);
  }
  return order;
}

// One line per function, `name = body`, dependencies before dependents and
// the target function last.
inline std::string render_program(const InducedProgram& p) {
  std::string out;
  for (const InducedFunction* f : program_topo_order(p))
    out += f->name + " = " + detail::render_body(f->body) + "\n";
  return out;
}

// Renames invented functions to target, g2, g3, ... in first-encounter order
// starting from the target body. Two programs are equal up to renaming iff
// their canonical forms render identically.
inline InducedProgram canonical_rename(const InducedProgram& p) {
  std::map<std::string, std::string> rename;
  rename[p.target_name] = "target";
  int next = 2;
  std::vector<std::string> queue{p.target_name};
  std::size_t qi = 0;
  while (qi < queue.size()) {
    const InducedFunction* f = p.find(queue[qi++]);
    if (!f) throw RenderError("undefined function '" + queue[qi - 1] + "'");
    std::vector<std::string> used;
    detail::body_names_in_order(f->body, used);
    for (const auto& u : used) {
      if (!p.find(u) || rename.count(u)) continue;
      rename[u] = "g" + std::to_string(next++);
      queue.push_back(u);
    }
  }
  // Functions not reachable from the target keep a canonical slot too.
  for (const auto& f : p.functions)
    if (!rename.count(f.name)) {
      rename[f.name] = "g" + std::to_string(next++);
      queue.push_back(f.name);
    }

  auto rewrite = [&](const ExprPtr& e) {
    std::function<ExprPtr(const ExprPtr&)> go = [&](const ExprPtr& x) -> ExprPtr {
      switch (x->kind) {
        case Expr::Kind::Var: {
          auto it = rename.find(x->name);
          return it == rename.end() ? x : var(it->second);
        }
        case Expr::Kind::Lambda: return lambda(x->params, go(x->e1));
        case Expr::Kind::Apply: return apply(go(x->e1), go(x->e2));
        case Expr::Kind::If: return if_expr(go(x->e1), go(x->e2), go(x->e3));
        default: return x;
      }
    };
    return go(e);
  };

  InducedProgram out;
  out.target_name = "target";
  // Keep canonical-name order: target first, then g2, g3, ...
  for (const auto& name : queue) {
    const InducedFunction* f = p.find(name);
    InducedFunction nf;
    nf.name = rename[name];
    nf.body = rewrite(f->body);
    nf.template_name = f->template_name;
    nf.complete = f->complete;
    out.functions.push_back(std::move(nf));
  }
  return out;
}

inline std::string canonical_text(const InducedProgram& p) {
  return render_program(canonical_rename(p));
}

// Structural equality of induced programs up to renaming of invented names.
inline bool same_structure(const InducedProgram& a, const InducedProgram& b) {
  return canonical_text(a) == canonical_text(b);
}

}  // namespace synth
