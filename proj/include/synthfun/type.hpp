#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace synth {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// Monomorphic type terms: variables, base types, lists and arrows.
struct Type {
  enum class Kind { Var, Int, Char, Bool, List, Arrow };
  Kind kind;
  std::string var;   // Var
  TypePtr a;         // List element / Arrow domain
  TypePtr b;         // Arrow codomain
};

inline TypePtr tvar(std::string name) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::Var;
  t->var = std::move(name);
  return t;
}

inline const TypePtr& tint() {
  static TypePtr t = [] {
    auto x = std::make_shared<Type>();
    x->kind = Type::Kind::Int;
    return x;
  }();
  return t;
}

inline const TypePtr& tchar() {
  static TypePtr t = [] {
    auto x = std::make_shared<Type>();
    x->kind = Type::Kind::Char;
    return x;
  }();
  return t;
}

inline const TypePtr& tbool() {
  static TypePtr t = [] {
    auto x = std::make_shared<Type>();
    x->kind = Type::Kind::Bool;
    return x;
  }();
  return t;
}

inline TypePtr tlist(TypePtr elem) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::List;
  t->a = std::move(elem);
  return t;
}

inline TypePtr tarrow(TypePtr from, TypePtr to) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::Arrow;
  t->a = std::move(from);
  t->b = std::move(to);
  return t;
}

inline bool type_equal(const TypePtr& x, const TypePtr& y) {
  if (x.get() == y.get()) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Type::Kind::Var: return x->var == y->var;
    case Type::Kind::Int:
    case Type::Kind::Char:
    case Type::Kind::Bool: return true;
    case Type::Kind::List: return type_equal(x->a, y->a);
    case Type::Kind::Arrow:
      return type_equal(x->a, y->a) && type_equal(x->b, y->b);
  }
  return false;
}

inline void free_type_vars(const TypePtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Type::Kind::Var: out.insert(t->var); break;
    case Type::Kind::List: free_type_vars(t->a, out); break;
    case Type::Kind::Arrow:
      free_type_vars(t->a, out);
      free_type_vars(t->b, out);
      break;
    default: break;
  }
}

inline std::set<std::string> free_type_vars(const TypePtr& t) {
  std::set<std::string> out;
  free_type_vars(t, out);
  return out;
}

inline bool occurs_in(const std::string& v, const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Var: return t->var == v;
    case Type::Kind::List: return occurs_in(v, t->a);
    case Type::Kind::Arrow: return occurs_in(v, t->a) || occurs_in(v, t->b);
    default: return false;
  }
}

inline std::string show_type(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Var: return t->var;
    case Type::Kind::Int: return "Int";
    case Type::Kind::Char: return "Char";
    case Type::Kind::Bool: return "Bool";
    case Type::Kind::List: return "[" + show_type(t->a) + "]";
    case Type::Kind::Arrow: {
      std::string lhs = show_type(t->a);
      if (t->a->kind == Type::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + show_type(t->b);
    }
  }
  return "?";
}

// Type scheme: body with a set of quantified variables. An unquantified
// (monomorphic) entry is represented by an empty quantifier list.
struct Scheme {
  std::vector<std::string> vars;
  TypePtr body;
};

inline Scheme mono(TypePtr t) { return Scheme{{}, std::move(t)}; }

inline std::set<std::string> free_type_vars(const Scheme& s) {
  std::set<std::string> out = free_type_vars(s.body);
  for (const auto& v : s.vars) out.erase(v);
  return out;
}

// Idempotent substitution from type-variable names to types.
class Subst {
 public:
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  const TypePtr* lookup(const std::string& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
  }

  TypePtr apply(const TypePtr& t) const {
    if (map_.empty()) return t;
    switch (t->kind) {
      case Type::Kind::Var: {
        auto it = map_.find(t->var);
        return it == map_.end() ? t : it->second;
      }
      case Type::Kind::List: {
        TypePtr e = apply(t->a);
        return e.get() == t->a.get() ? t : tlist(std::move(e));
      }
      case Type::Kind::Arrow: {
        TypePtr f = apply(t->a);
        TypePtr g = apply(t->b);
        if (f.get() == t->a.get() && g.get() == t->b.get()) return t;
        return tarrow(std::move(f), std::move(g));
      }
      default: return t;
    }
  }

  // Quantified variables are untouched: they are removed from the domain
  // before the body is rewritten.
  Scheme apply(const Scheme& s) const {
    if (map_.empty() || s.vars.empty()) return Scheme{s.vars, apply(s.body)};
    Subst trimmed;
    trimmed.map_ = map_;
    for (const auto& v : s.vars) trimmed.map_.erase(v);
    return Scheme{s.vars, trimmed.apply(s.body)};
  }

  // Binds v to t (t must already be rewritten by this substitution).
  // Fails on occurs-check violation. Keeps the substitution idempotent.
  bool bind(const std::string& v, const TypePtr& t) {
    if (t->kind == Type::Kind::Var && t->var == v) return true;
    if (occurs_in(v, t)) return false;
    Subst one;
    one.map_.emplace(v, t);
    for (auto& [w, u] : map_) u = one.apply(u);
    map_.emplace(v, t);
    return true;
  }

  const std::map<std::string, TypePtr>& entries() const { return map_; }

 private:
  std::map<std::string, TypePtr> map_;
};

namespace detail {
inline bool unify_rec(const TypePtr& x, const TypePtr& y, Subst& s) {
  TypePtr a = s.apply(x);
  TypePtr b = s.apply(y);
  if (a->kind == Type::Kind::Var) return s.bind(a->var, b);
  if (b->kind == Type::Kind::Var) return s.bind(b->var, a);
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::Int:
    case Type::Kind::Char:
    case Type::Kind::Bool: return true;
    case Type::Kind::List: return unify_rec(a->a, b->a, s);
    case Type::Kind::Arrow:
      return unify_rec(a->a, b->a, s) && unify_rec(a->b, b->b, s);
    default: return false;
  }
}
}  // namespace detail

// Most general unifier, or nullopt on constructor clash / occurs failure.
// Failure is an expected outcome used for pruning, not an error.
inline std::optional<Subst> unify(const TypePtr& t1, const TypePtr& t2) {
  Subst s;
  if (detail::unify_rec(t1, t2, s)) return s;
  return std::nullopt;
}

inline bool unifiable(const TypePtr& t1, const TypePtr& t2) {
  return unify(t1, t2).has_value();
}

// Deterministic source of fresh type variables.
struct FreshVars {
  int next = 1;
  std::string prefix = "t";
  TypePtr fresh() { return tvar(prefix + std::to_string(next++)); }
};

// Simultaneous variable replacement (unlike Subst, no composition: the
// replacements do not see each other).
inline TypePtr replace_vars(const TypePtr& t,
                            const std::map<std::string, TypePtr>& m) {
  switch (t->kind) {
    case Type::Kind::Var: {
      auto it = m.find(t->var);
      return it == m.end() ? t : it->second;
    }
    case Type::Kind::List: {
      TypePtr e = replace_vars(t->a, m);
      return e.get() == t->a.get() ? t : tlist(std::move(e));
    }
    case Type::Kind::Arrow: {
      TypePtr f = replace_vars(t->a, m);
      TypePtr g = replace_vars(t->b, m);
      if (f.get() == t->a.get() && g.get() == t->b.get()) return t;
      return tarrow(std::move(f), std::move(g));
    }
    default: return t;
  }
}

inline TypePtr instantiate(const Scheme& s, FreshVars& fresh) {
  if (s.vars.empty()) return s.body;
  std::map<std::string, TypePtr> rename;
  for (const auto& v : s.vars) rename.emplace(v, fresh.fresh());
  return replace_vars(s.body, rename);
}

// Typing environment: quantified schemes for combinators, background
// functions and primitives; unquantified entries for invented functions.
class TypeEnv {
 public:
  void insert(const std::string& name, Scheme s) {
    map_[name] = std::move(s);
  }
  const Scheme* lookup(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : &it->second;
  }
  bool contains(const std::string& name) const { return map_.count(name) > 0; }

  std::set<std::string> free_vars() const {
    std::set<std::string> out;
    for (const auto& [k, v] : map_) {
      auto f = free_type_vars(v);
      out.insert(f.begin(), f.end());
    }
    return out;
  }

  void apply_subst(const Subst& s) {
    for (auto& [k, v] : map_) v = s.apply(v);
  }

  const std::map<std::string, Scheme>& entries() const { return map_; }

 private:
  std::map<std::string, Scheme> map_;
};

namespace detail {
inline void vars_in_order(const TypePtr& t, std::vector<std::string>& out,
                          std::set<std::string>& seen) {
  switch (t->kind) {
    case Type::Kind::Var:
      if (seen.insert(t->var).second) out.push_back(t->var);
      break;
    case Type::Kind::List: vars_in_order(t->a, out, seen); break;
    case Type::Kind::Arrow:
      vars_in_order(t->a, out, seen);
      vars_in_order(t->b, out, seen);
      break;
    default: break;
  }
}
}  // namespace detail

// Quantifies exactly ftv(t) \ ftv(env). Bound variables get canonical names
// (q1, q2, ... in order of appearance) so scheme variables never collide
// with the names handed out by a FreshVars source.
inline Scheme generalize(const TypeEnv& env, const TypePtr& t) {
  std::set<std::string> tv = free_type_vars(t);
  for (const auto& v : env.free_vars()) tv.erase(v);
  if (tv.empty()) return Scheme{{}, t};
  std::vector<std::string> order;
  std::set<std::string> seen;
  detail::vars_in_order(t, order, seen);
  std::map<std::string, TypePtr> rename;
  std::vector<std::string> bound;
  int n = 1;
  for (const auto& v : order) {
    if (!tv.count(v)) continue;
    std::string q = "q" + std::to_string(n++);
    bound.push_back(q);
    rename.emplace(v, tvar(q));
  }
  return Scheme{std::move(bound), replace_vars(t, rename)};
}

// Equality of types up to a bijective renaming of variables.
inline bool type_alpha_equal(const TypePtr& x, const TypePtr& y,
                             std::map<std::string, std::string>& fwd,
                             std::map<std::string, std::string>& bwd) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Type::Kind::Var: {
      auto f = fwd.find(x->var);
      auto b = bwd.find(y->var);
      if (f == fwd.end() && b == bwd.end()) {
        fwd[x->var] = y->var;
        bwd[y->var] = x->var;
        return true;
      }
      return f != fwd.end() && b != bwd.end() && f->second == y->var &&
             b->second == x->var;
    }
    case Type::Kind::List: return type_alpha_equal(x->a, y->a, fwd, bwd);
    case Type::Kind::Arrow:
      return type_alpha_equal(x->a, y->a, fwd, bwd) &&
             type_alpha_equal(x->b, y->b, fwd, bwd);
    default: return true;
  }
}

inline bool type_alpha_equal(const TypePtr& x, const TypePtr& y) {
  std::map<std::string, std::string> fwd, bwd;
  return type_alpha_equal(x, y, fwd, bwd);
}

}  // namespace synth
