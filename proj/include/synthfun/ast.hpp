#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synthfun/type.hpp"

namespace synth {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expressions of the target language, including indexed holes.
struct Expr {
  enum class Kind { Num, Char, Bool, Var, Lambda, Apply, If, Hole };
  Kind kind;
  long long num = 0;               // Num
  char chr = 0;                    // Char
  bool bval = false;               // Bool
  std::string name;                // Var
  std::vector<std::string> params; // Lambda
  ExprPtr e1, e2, e3;              // Lambda body / Apply fn,arg / If c,t,e
  int hole = 0;                    // Hole index
};

inline ExprPtr num_lit(long long n) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Num;
  e->num = n;
  return e;
}

inline ExprPtr char_lit(char c) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Char;
  e->chr = c;
  return e;
}

inline ExprPtr bool_lit(bool b) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Bool;
  e->bval = b;
  return e;
}

inline ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = std::move(name);
  return e;
}

inline ExprPtr lambda(std::vector<std::string> params, ExprPtr body) {
  if (params.empty()) throw std::invalid_argument("lambda needs parameters");
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Lambda;
  e->params = std::move(params);
  e->e1 = std::move(body);
  return e;
}

inline ExprPtr apply(ExprPtr fn, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Apply;
  e->e1 = std::move(fn);
  e->e2 = std::move(arg);
  return e;
}

inline ExprPtr if_expr(ExprPtr c, ExprPtr t, ExprPtr f) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::If;
  e->e1 = std::move(c);
  e->e2 = std::move(t);
  e->e3 = std::move(f);
  return e;
}

inline ExprPtr hole(int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Hole;
  e->hole = index;
  return e;
}

namespace detail {
inline void free_names_rec(const ExprPtr& e, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  switch (e->kind) {
    case Expr::Kind::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      break;
    case Expr::Kind::Lambda: {
      std::vector<std::string> added;
      for (const auto& p : e->params)
        if (bound.insert(p).second) added.push_back(p);
      free_names_rec(e->e1, bound, out);
      for (const auto& p : added) bound.erase(p);
      break;
    }
    case Expr::Kind::Apply:
      free_names_rec(e->e1, bound, out);
      free_names_rec(e->e2, bound, out);
      break;
    case Expr::Kind::If:
      free_names_rec(e->e1, bound, out);
      free_names_rec(e->e2, bound, out);
      free_names_rec(e->e3, bound, out);
      break;
    default: break;
  }
}
}  // namespace detail

// All Var names not bound by an enclosing lambda. Holes carry no names.
inline std::set<std::string> free_names(const ExprPtr& e) {
  std::set<std::string> bound, out;
  detail::free_names_rec(e, bound, out);
  return out;
}

inline void holes_of(const ExprPtr& e, std::vector<int>& out) {
  switch (e->kind) {
    case Expr::Kind::Hole: out.push_back(e->hole); break;
    case Expr::Kind::Lambda: holes_of(e->e1, out); break;
    case Expr::Kind::Apply:
      holes_of(e->e1, out);
      holes_of(e->e2, out);
      break;
    case Expr::Kind::If:
      holes_of(e->e1, out);
      holes_of(e->e2, out);
      holes_of(e->e3, out);
      break;
    default: break;
  }
}

inline std::vector<int> holes_of(const ExprPtr& e) {
  std::vector<int> out;
  holes_of(e, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_holes(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Hole: return true;
    case Expr::Kind::Lambda: return has_holes(e->e1);
    case Expr::Kind::Apply: return has_holes(e->e1) || has_holes(e->e2);
    case Expr::Kind::If:
      return has_holes(e->e1) || has_holes(e->e2) || has_holes(e->e3);
    default: return false;
  }
}

// Replaces hole `index` with a Var reference; untouched subtrees are shared.
inline ExprPtr fill_hole(const ExprPtr& e, int index, const std::string& name) {
  switch (e->kind) {
    case Expr::Kind::Hole:
      return e->hole == index ? var(name) : e;
    case Expr::Kind::Lambda: {
      ExprPtr b = fill_hole(e->e1, index, name);
      return b.get() == e->e1.get() ? e : lambda(e->params, std::move(b));
    }
    case Expr::Kind::Apply: {
      ExprPtr f = fill_hole(e->e1, index, name);
      ExprPtr a = fill_hole(e->e2, index, name);
      if (f.get() == e->e1.get() && a.get() == e->e2.get()) return e;
      return apply(std::move(f), std::move(a));
    }
    case Expr::Kind::If: {
      ExprPtr c = fill_hole(e->e1, index, name);
      ExprPtr t = fill_hole(e->e2, index, name);
      ExprPtr f = fill_hole(e->e3, index, name);
      if (c.get() == e->e1.get() && t.get() == e->e2.get() &&
          f.get() == e->e3.get())
        return e;
      return if_expr(std::move(c), std::move(t), std::move(f));
    }
    default: return e;
  }
}

namespace detail {
inline bool alpha_rec(const ExprPtr& a, const ExprPtr& b,
                      std::map<std::string, std::string>& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Num: return a->num == b->num;
    case Expr::Kind::Char: return a->chr == b->chr;
    case Expr::Kind::Bool: return a->bval == b->bval;
    case Expr::Kind::Hole: return a->hole == b->hole;
    case Expr::Kind::Var: {
      auto it = env.find(a->name);
      if (it != env.end()) return it->second == b->name;
      return a->name == b->name;
    }
    case Expr::Kind::Lambda: {
      if (a->params.size() != b->params.size()) return false;
      std::map<std::string, std::string> inner = env;
      for (std::size_t i = 0; i < a->params.size(); ++i)
        inner[a->params[i]] = b->params[i];
      return alpha_rec(a->e1, b->e1, inner);
    }
    case Expr::Kind::Apply:
      return alpha_rec(a->e1, b->e1, env) && alpha_rec(a->e2, b->e2, env);
    case Expr::Kind::If:
      return alpha_rec(a->e1, b->e1, env) && alpha_rec(a->e2, b->e2, env) &&
             alpha_rec(a->e3, b->e3, env);
  }
  return false;
}
}  // namespace detail

inline bool alpha_equal(const ExprPtr& a, const ExprPtr& b) {
  std::map<std::string, std::string> env;
  return detail::alpha_rec(a, b, env);
}

// Declarations of a source file.
struct Decl {
  enum class Kind { Val, Rec, PosExample, NegExample, Goal };
  Kind kind;
  std::string name;          // Val / Rec
  std::vector<std::string> params;
  ExprPtr body;              // Val / Rec (already wrapped in a lambda if params)
  ExprPtr in, out;           // examples
  TypePtr goal_in, goal_out; // Goal
  int line = 0;
};

struct SourceFile {
  std::vector<Decl> declarations;
  std::string path;
};

// A function created during synthesis.
struct InducedFunction {
  std::string name;
  ExprPtr body;
  std::string template_name;  // combinator that produced the body; "" = identity
  bool complete = false;
};

struct InducedProgram {
  std::vector<InducedFunction> functions;  // invention order, target first
  std::string target_name;

  const InducedFunction* find(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }
};

}  // namespace synth
