#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synthfun/ast.hpp"
#include "synthfun/type.hpp"

namespace synth {

// Unbound identifiers are reported as errors; unification failures are
// expected outcomes and surface as nullopt.
class UnboundName : public std::runtime_error {
 public:
  explicit UnboundName(const std::string& name)
      : std::runtime_error("unbound identifier '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct InferResult {
  TypePtr type;
  Subst subst;
  std::map<int, TypePtr> hole_types;  // most-constrained type per hole index
};

namespace detail {

class Inferencer {
 public:
  Inferencer(const TypeEnv& env, FreshVars& fresh) : env_(env), fresh_(fresh) {}

  std::optional<InferResult> run(const ExprPtr& e) {
    ok_ = true;
    TypePtr t = go(e);
    if (!ok_) return std::nullopt;
    InferResult r;
    r.type = subst_.apply(t);
    for (auto& [idx, ht] : raw_holes_) r.hole_types[idx] = subst_.apply(ht);
    r.subst = std::move(subst_);
    return r;
  }

 private:
  const TypeEnv& env_;
  FreshVars& fresh_;
  Subst subst_;
  std::vector<std::pair<std::string, TypePtr>> scope_;  // lambda binders
  std::map<int, TypePtr> raw_holes_;
  bool ok_ = true;

  bool unify_in(const TypePtr& a, const TypePtr& b) {
    if (!detail::unify_rec(a, b, subst_)) {
      ok_ = false;
      return false;
    }
    return true;
  }

  TypePtr go(const ExprPtr& e) {
    if (!ok_) return tint();
    switch (e->kind) {
      case Expr::Kind::Num: return tint();
      case Expr::Kind::Char: return tchar();
      case Expr::Kind::Bool: return tbool();
      case Expr::Kind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == e->name) return subst_.apply(it->second);
        if (const Scheme* s = env_.lookup(e->name))
          return subst_.apply(instantiate(*s, fresh_));
        throw UnboundName(e->name);
      }
      case Expr::Kind::Hole: {
        TypePtr a = fresh_.fresh();
        raw_holes_[e->hole] = a;
        return a;
      }
      case Expr::Kind::Lambda: {
        std::size_t base = scope_.size();
        std::vector<TypePtr> args;
        for (const auto& p : e->params) {
          TypePtr a = fresh_.fresh();
          args.push_back(a);
          scope_.emplace_back(p, a);
        }
        TypePtr body = go(e->e1);
        scope_.resize(base);
        if (!ok_) return tint();
        TypePtr t = subst_.apply(body);
        for (auto it = args.rbegin(); it != args.rend(); ++it)
          t = tarrow(subst_.apply(*it), std::move(t));
        return t;
      }
      case Expr::Kind::Apply: {
        TypePtr f = go(e->e1);
        TypePtr a = go(e->e2);
        if (!ok_) return tint();
        TypePtr res = fresh_.fresh();
        if (!unify_in(subst_.apply(f), tarrow(subst_.apply(a), res)))
          return tint();
        return subst_.apply(res);
      }
      case Expr::Kind::If: {
        TypePtr c = go(e->e1);
        if (!ok_ || !unify_in(subst_.apply(c), tbool())) return tint();
        TypePtr t = go(e->e2);
        TypePtr f = go(e->e3);
        if (!ok_ || !unify_in(subst_.apply(t), subst_.apply(f))) return tint();
        return subst_.apply(t);
      }
    }
    return tint();
  }
};

}  // namespace detail

// Algorithm-W inference. Each hole gets a fresh type variable (THole); the
// result records the most-constrained type discovered for every hole index.
inline std::optional<InferResult> infer_expr(const TypeEnv& env,
                                             const ExprPtr& e,
                                             FreshVars& fresh) {
  detail::Inferencer inf(env, fresh);
  return inf.run(e);
}

inline std::optional<InferResult> infer_expr(const TypeEnv& env,
                                             const ExprPtr& e) {
  FreshVars fresh;
  return infer_expr(env, e, fresh);
}

// Infers and generalizes the scheme of a val/rec definition whose body is
// already wrapped in its parameter lambda.
inline std::optional<Scheme> infer_definition(const TypeEnv& env,
                                              const std::string& name,
                                              const ExprPtr& body, bool is_rec,
                                              FreshVars& fresh) {
  if (!is_rec) {
    auto r = infer_expr(env, body, fresh);
    if (!r) return std::nullopt;
    return generalize(env, r->type);
  }
  TypeEnv scoped = env;
  TypePtr self = fresh.fresh();
  scoped.insert(name, mono(self));
  auto r = infer_expr(scoped, body, fresh);
  if (!r) return std::nullopt;
  TypePtr bound = r->subst.apply(self);
  auto s = unify(bound, r->type);
  if (!s) return std::nullopt;
  return generalize(env, s->apply(r->type));
}

// Deferred whole-program inference: functions are typed in dependency order
// and generalized at definition boundaries before dependents use them, which
// is what lets a reused function occur at several instantiations.
inline std::optional<TypeEnv> infer_program(
    const TypeEnv& base, const std::vector<const InducedFunction*>& order,
    FreshVars& fresh) {
  TypeEnv env = base;
  for (const InducedFunction* f : order) {
    auto r = infer_expr(env, f->body, fresh);
    if (!r) return std::nullopt;
    env.insert(f->name, generalize(env, r->type));
  }
  return env;
}

}  // namespace synth
