#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "synthfun/ast.hpp"
#include "synthfun/infer.hpp"
#include "synthfun/interp.hpp"
#include "synthfun/parser.hpp"

namespace synth {

// A higher-order combinator applied to numbered holes. Linear templates have
// pairwise variable-disjoint hole argument types; the rest are branching.
struct Template {
  std::string name;                   // combinator name; empty for identity
  Scheme comb_scheme;                 // quantified scheme of the combinator
  int hole_count = 1;
  std::vector<TypePtr> hole_arg_types;  // share the scheme's variables
  TypePtr result_type;                  // scheme body minus leading hole arrows
  bool linear = true;
  bool identity = false;

  std::string display_name() const { return identity ? "<identity>" : name; }
};

struct BackgroundFn {
  std::string name;
  Scheme scheme;
};

struct ExampleSet {
  std::vector<std::pair<ValuePtr, ValuePtr>> positives;
  std::vector<std::pair<ValuePtr, ValuePtr>> negatives;
  TypePtr goal_in, goal_out;
  TypePtr goal_type() const { return tarrow(goal_in, goal_out); }
};

// Raw declaration split: combinators vs BK_-prefixed background functions vs
// examples. Order within each group is file order.
struct SplitDecls {
  std::vector<const Decl*> templates;
  std::vector<const Decl*> background;
  std::vector<const Decl*> examples;
  const Decl* goal = nullptr;
};

inline bool is_background_name(const std::string& name) {
  return name.rfind("BK_", 0) == 0;
}

namespace detail {
inline bool is_reserved_name(const std::string& name) {
  if (name == "target") return true;
  if (name.size() >= 2 && name[0] == 'g') {
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
  }
  return false;
}
}  // namespace detail

// Definitions named BK_* become background functions (referenced by their
// full name); all other definitions are template combinators.
inline SplitDecls split_knowledge(const SourceFile& file) {
  SplitDecls out;
  for (const Decl& d : file.declarations) {
    switch (d.kind) {
      case Decl::Kind::Val:
      case Decl::Kind::Rec:
        if (detail::is_reserved_name(d.name))
          throw SynthError("'" + d.name + "' is reserved for induced functions",
                           d.line);
        if (is_background_name(d.name)) {
          out.background.push_back(&d);
        } else {
          if (d.params.empty())
            throw SynthError("combinator '" + d.name +
                                 "' needs at least one parameter (hole)",
                             d.line);
          out.templates.push_back(&d);
        }
        break;
      case Decl::Kind::PosExample:
      case Decl::Kind::NegExample: out.examples.push_back(&d); break;
      case Decl::Kind::Goal: out.goal = &d; break;
    }
  }
  return out;
}

// Builds a Template from a combinator declaration: the hole count is the
// declared parameter count, the hole argument types are the scheme's leading
// arrow positions, and the classification follows variable sharing.
inline Template build_template(const Decl& d, const Scheme& scheme) {
  Template t;
  t.name = d.name;
  t.comb_scheme = scheme;
  t.hole_count = static_cast<int>(d.params.size());
  TypePtr cur = scheme.body;
  for (int i = 0; i < t.hole_count; ++i) {
    if (cur->kind != Type::Kind::Arrow)
      throw SynthError("combinator '" + d.name +
                           "' has more parameters than arrow positions",
                       d.line);
    t.hole_arg_types.push_back(cur->a);
    cur = cur->b;
  }
  t.result_type = cur;
  t.linear = true;
  for (std::size_t i = 0; i < t.hole_arg_types.size() && t.linear; ++i) {
    auto vi = free_type_vars(t.hole_arg_types[i]);
    for (std::size_t j = i + 1; j < t.hole_arg_types.size(); ++j) {
      for (const auto& v : free_type_vars(t.hole_arg_types[j]))
        if (vi.count(v)) {
          t.linear = false;
          break;
        }
      if (!t.linear) break;
    }
  }
  return t;
}

// The identity template: a bare hole whose type is the body type.
inline Template identity_template() {
  Template t;
  t.name = "";
  t.identity = true;
  t.hole_count = 1;
  TypePtr a = tvar("a");
  t.comb_scheme = Scheme{{"a"}, a};
  t.hole_arg_types = {a};
  t.result_type = a;
  t.linear = true;
  return t;
}

struct TemplateInstance {
  ExprPtr body;
  TypePtr body_type;
  std::vector<std::pair<int, TypePtr>> hole_types;  // hole index -> type
};

// Instantiates the template body with fresh hole indices and a fresh copy of
// the scheme's variables.
inline TemplateInstance instantiate_template(const Template& t,
                                             int& hole_counter,
                                             FreshVars& fresh) {
  std::map<std::string, TypePtr> rename;
  for (const auto& v : t.comb_scheme.vars) rename.emplace(v, fresh.fresh());
  TemplateInstance inst;
  if (t.identity) {
    int h = hole_counter++;
    TypePtr a = replace_vars(t.result_type, rename);
    inst.body = hole(h);
    inst.body_type = a;
    inst.hole_types.emplace_back(h, a);
    return inst;
  }
  ExprPtr body = var(t.name);
  for (int i = 0; i < t.hole_count; ++i) {
    int h = hole_counter++;
    body = apply(std::move(body), hole(h));
    inst.hole_types.emplace_back(h, replace_vars(t.hole_arg_types[i], rename));
  }
  inst.body = std::move(body);
  inst.body_type = replace_vars(t.result_type, rename);
  return inst;
}

// Everything the search needs, prepared from one source file: templates,
// background functions, typed and evaluated definitions, and examples.
struct Knowledge {
  std::vector<Template> templates;      // file order; identity last if enabled
  std::vector<BackgroundFn> background; // file order
  ExampleSet examples;
  TypeEnv types;                        // primitives + combinators + BK
  std::shared_ptr<GlobalEnv> values;    // primitives + combinators + BK
};

inline Knowledge build_knowledge(const SourceFile& file,
                                 bool include_identity = false,
                                 long long example_fuel = 100000) {
  SplitDecls split = split_knowledge(file);
  Knowledge k;
  k.types = primitive_types();
  k.values = std::make_shared<GlobalEnv>(primitive_values());

  // Type and evaluate definitions in file order so later ones may refer to
  // earlier ones.
  FreshVars fresh;
  for (const Decl& d : file.declarations) {
    if (d.kind != Decl::Kind::Val && d.kind != Decl::Kind::Rec) continue;
    if (k.types.contains(d.name))
      throw SynthError("duplicate definition of '" + d.name + "'", d.line);
    auto scheme =
        infer_definition(k.types, d.name, d.body, d.kind == Decl::Kind::Rec, fresh);
    if (!scheme)
      throw SynthError("definition '" + d.name + "' does not type check", d.line);
    k.types.insert(d.name, *scheme);
    ValuePtr v;
    if (d.body->kind == Expr::Kind::Lambda) {
      v = vclosure(d.body->params, d.body->e1, nullptr);
    } else {
      EvalCtx ctx;
      ctx.globals = k.values.get();
      ctx.fuel = example_fuel;
      v = eval_expr(ctx, nullptr, d.body);
      if (!v)
        throw SynthError("definition '" + d.name + "' failed to evaluate: " +
                             std::string(ctx.error),
                         d.line);
    }
    (*k.values)[d.name] = v;
  }

  for (const Decl* d : split.templates) {
    const Scheme* s = k.types.lookup(d->name);
    k.templates.push_back(build_template(*d, *s));
  }
  if (include_identity) k.templates.push_back(identity_template());

  for (const Decl* d : split.background)
    k.background.push_back(BackgroundFn{d->name, *k.types.lookup(d->name)});

  if (!split.goal) throw SynthError("missing Synthesize declaration");
  k.examples.goal_in = split.goal->goal_in;
  k.examples.goal_out = split.goal->goal_out;

  for (const Decl* d : split.examples) {
    EvalCtx ctx;
    ctx.globals = k.values.get();
    ctx.fuel = example_fuel;
    ValuePtr in = eval_expr(ctx, nullptr, d->in);
    if (!in)
      throw SynthError(std::string("example input failed to evaluate: ") +
                           ctx.error,
                       d->line);
    ValuePtr out = eval_expr(ctx, nullptr, d->out);
    if (!out)
      throw SynthError(std::string("example output failed to evaluate: ") +
                           ctx.error,
                       d->line);
    if (d->kind == Decl::Kind::PosExample)
      k.examples.positives.emplace_back(std::move(in), std::move(out));
    else
      k.examples.negatives.emplace_back(std::move(in), std::move(out));
  }
  if (k.examples.positives.empty())
    throw SynthError("at least one positive example is required");
  return k;
}

}  // namespace synth
