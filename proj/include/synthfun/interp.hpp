#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "synthfun/ast.hpp"

namespace synth {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// Frame of lambda bindings; immutable chain shared between closures.
struct Frame;
using FramePtr = std::shared_ptr<const Frame>;
struct Frame {
  std::string name;
  ValuePtr value;
  FramePtr next;
};

inline FramePtr frame_bind(FramePtr next, std::string name, ValuePtr v) {
  auto f = std::make_shared<Frame>();
  f->name = std::move(name);
  f->value = std::move(v);
  f->next = std::move(next);
  return f;
}

enum class Prim {
  Head, Tail, Cons, Add, Sub, Mul, Eq, Lt, Not,
  IsUpper, IsAlpha, IsNum, Reverse
};

struct Value {
  enum class Kind { Int, Char, Bool, List, Closure, Builtin };
  Kind kind;
  long long num = 0;
  char chr = 0;
  bool bval = false;
  std::vector<ValuePtr> list;
  // closure
  std::vector<std::string> params;  // remaining parameters
  ExprPtr body;
  FramePtr frame;
  // builtin
  Prim prim = Prim::Head;
  std::vector<ValuePtr> collected;
};

inline ValuePtr vint(long long n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Int;
  v->num = n;
  return v;
}

inline ValuePtr vchar(char c) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Char;
  v->chr = c;
  return v;
}

inline ValuePtr vbool(bool b) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Bool;
  v->bval = b;
  return v;
}

inline ValuePtr vlist(std::vector<ValuePtr> xs) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::List;
  v->list = std::move(xs);
  return v;
}

inline ValuePtr vclosure(std::vector<std::string> params, ExprPtr body,
                         FramePtr frame) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Closure;
  v->params = std::move(params);
  v->body = std::move(body);
  v->frame = std::move(frame);
  return v;
}

inline ValuePtr vbuiltin(Prim p, std::vector<ValuePtr> collected = {}) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Builtin;
  v->prim = p;
  v->collected = std::move(collected);
  return v;
}

// Structural equality over first-order values. Closures never compare equal.
inline bool value_equal(const ValuePtr& a, const ValuePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Value::Kind::Int: return a->num == b->num;
    case Value::Kind::Char: return a->chr == b->chr;
    case Value::Kind::Bool: return a->bval == b->bval;
    case Value::Kind::List: {
      if (a->list.size() != b->list.size()) return false;
      for (std::size_t i = 0; i < a->list.size(); ++i)
        if (!value_equal(a->list[i], b->list[i])) return false;
      return true;
    }
    default: return false;
  }
}

inline bool is_first_order(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Closure:
    case Value::Kind::Builtin: return false;
    case Value::Kind::List:
      for (const auto& x : v->list)
        if (!is_first_order(x)) return false;
      return true;
    default: return true;
  }
}

inline std::string show_value(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Int: return std::to_string(v->num);
    case Value::Kind::Char: return "'" + std::string(1, v->chr) + "'";
    case Value::Kind::Bool: return v->bval ? "true" : "false";
    case Value::Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v->list.size(); ++i) {
        if (i) out += ", ";
        out += show_value(v->list[i]);
      }
      return out + "]";
    }
    case Value::Kind::Closure: return "<fun>";
    case Value::Kind::Builtin: return "<prim>";
  }
  return "?";
}

// Step budget: counts function applications. Exceeding it is an
// evaluation failure, not a crash.
struct Budget {
  long long max_steps = 100000;
};

using GlobalEnv = std::map<std::string, ValuePtr>;

// Evaluation context: shared globals, per-candidate induced overlay, fuel.
// A null result means evaluation failure with `error` set.
struct EvalCtx {
  const GlobalEnv* globals = nullptr;
  const std::vector<std::pair<std::string, ValuePtr>>* overlay = nullptr;
  long long fuel = 100000;
  const char* error = nullptr;

  ValuePtr fail(const char* what) {
    if (!error) error = what;
    return nullptr;
  }
};

inline ValuePtr eval_expr(EvalCtx& ctx, const FramePtr& frame, const ExprPtr& e);

inline int prim_arity(Prim p) {
  switch (p) {
    case Prim::Cons:
    case Prim::Add:
    case Prim::Sub:
    case Prim::Mul:
    case Prim::Eq:
    case Prim::Lt: return 2;
    default: return 1;
  }
}

inline ValuePtr apply_prim(EvalCtx& ctx, Prim p,
                           const std::vector<ValuePtr>& args) {
  auto want_int = [&](const ValuePtr& v) -> bool {
    return v->kind == Value::Kind::Int;
  };
  switch (p) {
    case Prim::Head:
      if (args[0]->kind != Value::Kind::List) return ctx.fail("head: not a list");
      if (args[0]->list.empty()) return ctx.fail("head of empty list");
      return args[0]->list.front();
    case Prim::Tail: {
      if (args[0]->kind != Value::Kind::List) return ctx.fail("tail: not a list");
      if (args[0]->list.empty()) return ctx.fail("tail of empty list");
      std::vector<ValuePtr> rest(args[0]->list.begin() + 1, args[0]->list.end());
      return vlist(std::move(rest));
    }
    case Prim::Cons: {
      if (args[1]->kind != Value::Kind::List) return ctx.fail("cons: not a list");
      std::vector<ValuePtr> xs;
      xs.reserve(args[1]->list.size() + 1);
      xs.push_back(args[0]);
      xs.insert(xs.end(), args[1]->list.begin(), args[1]->list.end());
      return vlist(std::move(xs));
    }
    case Prim::Add:
    case Prim::Sub:
    case Prim::Mul: {
      if (!want_int(args[0]) || !want_int(args[1]))
        return ctx.fail("arithmetic on non-integer");
      long long a = args[0]->num, b = args[1]->num;
      long long r = p == Prim::Add ? a + b : p == Prim::Sub ? a - b : a * b;
      return vint(r);
    }
    case Prim::Eq:
      if (!is_first_order(args[0]) || !is_first_order(args[1]))
        return ctx.fail("= on functions");
      return vbool(value_equal(args[0], args[1]));
    case Prim::Lt:
      if (!want_int(args[0]) || !want_int(args[1]))
        return ctx.fail("< on non-integer");
      return vbool(args[0]->num < args[1]->num);
    case Prim::Not:
      if (args[0]->kind != Value::Kind::Bool)
        return ctx.fail("not: not a boolean");
      return vbool(!args[0]->bval);
    case Prim::IsUpper:
    case Prim::IsAlpha:
    case Prim::IsNum: {
      if (args[0]->kind != Value::Kind::Char)
        return ctx.fail("char predicate on non-character");
      unsigned char c = static_cast<unsigned char>(args[0]->chr);
      bool r = p == Prim::IsUpper   ? std::isupper(c) != 0
               : p == Prim::IsAlpha ? std::isalpha(c) != 0
                                    : std::isdigit(c) != 0;
      return vbool(r);
    }
    case Prim::Reverse: {
      if (args[0]->kind != Value::Kind::List)
        return ctx.fail("reverse: not a list");
      std::vector<ValuePtr> xs(args[0]->list.rbegin(), args[0]->list.rend());
      return vlist(std::move(xs));
    }
  }
  return ctx.fail("unknown primitive");
}

// One application step (beta reduction or primitive application).
inline ValuePtr apply_value(EvalCtx& ctx, const ValuePtr& fn,
                            const ValuePtr& arg) {
  if (--ctx.fuel < 0) return ctx.fail("step budget exceeded");
  switch (fn->kind) {
    case Value::Kind::Closure: {
      FramePtr frame = frame_bind(fn->frame, fn->params.front(), arg);
      if (fn->params.size() > 1) {
        std::vector<std::string> rest(fn->params.begin() + 1, fn->params.end());
        return vclosure(std::move(rest), fn->body, std::move(frame));
      }
      return eval_expr(ctx, frame, fn->body);
    }
    case Value::Kind::Builtin: {
      std::vector<ValuePtr> args = fn->collected;
      args.push_back(arg);
      if (static_cast<int>(args.size()) < prim_arity(fn->prim))
        return vbuiltin(fn->prim, std::move(args));
      return apply_prim(ctx, fn->prim, args);
    }
    default: return ctx.fail("applied a non-function");
  }
}

// Call-by-value evaluation; `if` evaluates only the taken branch.
inline ValuePtr eval_expr(EvalCtx& ctx, const FramePtr& frame,
                          const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Num: return vint(e->num);
    case Expr::Kind::Char: return vchar(e->chr);
    case Expr::Kind::Bool: return vbool(e->bval);
    case Expr::Kind::Hole: return ctx.fail("evaluated a hole");
    case Expr::Kind::Var: {
      for (const Frame* f = frame.get(); f; f = f->next.get())
        if (f->name == e->name) return f->value;
      if (ctx.overlay)
        for (auto it = ctx.overlay->rbegin(); it != ctx.overlay->rend(); ++it)
          if (it->first == e->name) return it->second;
      if (ctx.globals) {
        auto it = ctx.globals->find(e->name);
        if (it != ctx.globals->end()) return it->second;
      }
      return ctx.fail("unbound name");
    }
    case Expr::Kind::Lambda: return vclosure(e->params, e->e1, frame);
    case Expr::Kind::Apply: {
      ValuePtr f = eval_expr(ctx, frame, e->e1);
      if (!f) return nullptr;
      ValuePtr a = eval_expr(ctx, frame, e->e2);
      if (!a) return nullptr;
      return apply_value(ctx, f, a);
    }
    case Expr::Kind::If: {
      ValuePtr c = eval_expr(ctx, frame, e->e1);
      if (!c) return nullptr;
      if (c->kind != Value::Kind::Bool) return ctx.fail("if on non-boolean");
      return eval_expr(ctx, frame, c->bval ? e->e2 : e->e3);
    }
  }
  return ctx.fail("bad expression");
}

inline GlobalEnv primitive_values() {
  GlobalEnv g;
  g["head"] = vbuiltin(Prim::Head);
  g["tail"] = vbuiltin(Prim::Tail);
  g[":"] = vbuiltin(Prim::Cons);
  g["nil"] = vlist({});
  g["+"] = vbuiltin(Prim::Add);
  g["-"] = vbuiltin(Prim::Sub);
  g["*"] = vbuiltin(Prim::Mul);
  g["="] = vbuiltin(Prim::Eq);
  g["<"] = vbuiltin(Prim::Lt);
  g["not"] = vbuiltin(Prim::Not);
  g["isUpper"] = vbuiltin(Prim::IsUpper);
  g["isAlpha"] = vbuiltin(Prim::IsAlpha);
  g["isNum"] = vbuiltin(Prim::IsNum);
  g["reverse"] = vbuiltin(Prim::Reverse);
  return g;
}

inline TypeEnv primitive_types() {
  TypeEnv env;
  TypePtr a = tvar("a");
  env.insert("head", Scheme{{"a"}, tarrow(tlist(a), a)});
  env.insert("tail", Scheme{{"a"}, tarrow(tlist(a), tlist(a))});
  env.insert("nil", Scheme{{"a"}, tlist(a)});
  env.insert(":", Scheme{{"a"}, tarrow(a, tarrow(tlist(a), tlist(a)))});
  env.insert("+", mono(tarrow(tint(), tarrow(tint(), tint()))));
  env.insert("-", mono(tarrow(tint(), tarrow(tint(), tint()))));
  env.insert("*", mono(tarrow(tint(), tarrow(tint(), tint()))));
  env.insert("=", Scheme{{"a"}, tarrow(a, tarrow(a, tbool()))});
  env.insert("<", mono(tarrow(tint(), tarrow(tint(), tbool()))));
  env.insert("not", mono(tarrow(tbool(), tbool())));
  env.insert("isUpper", mono(tarrow(tchar(), tbool())));
  env.insert("isAlpha", mono(tarrow(tchar(), tbool())));
  env.insert("isNum", mono(tarrow(tchar(), tbool())));
  env.insert("reverse", Scheme{{"a"}, tarrow(tlist(a), tlist(a))});
  return env;
}

// Extends an overlay with induced functions in dependency order. Each body
// is evaluated once; later functions see earlier ones.
inline bool load_program(EvalCtx& ctx,
                         std::vector<std::pair<std::string, ValuePtr>>& overlay,
                         const std::vector<const InducedFunction*>& order) {
  ctx.overlay = &overlay;
  for (const InducedFunction* f : order) {
    if (ctx.globals && ctx.globals->count(f->name)) {
      ctx.fail("induced name collides with a definition");
      return false;
    }
    ValuePtr v = eval_expr(ctx, nullptr, f->body);
    if (!v) return false;
    overlay.emplace_back(f->name, v);
  }
  return true;
}

}  // namespace synth
