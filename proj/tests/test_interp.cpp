#include <catch2/catch_amalgamated.hpp>

#include "synthfun/knowledge.hpp"
#include "synthfun/parser.hpp"
#include "synthfun/render.hpp"

using namespace synth;

namespace {

Knowledge add8_knowledge() {
  SourceFile f = parse_source(
      "val comp(f, g) = lambda (x) f(g(x)) ;;\n"
      "rec map(f) = lambda (xs)\n"
      "  (if xs = nil then nil else f(head(xs)) : map(f)(tail(xs))) ;;\n"
      "rec filter(p) = lambda (xs)\n"
      "  (if xs = nil then nil else\n"
      "    if p(head(xs)) then head(xs) : filter(p)(tail(xs))\n"
      "    else filter(p)(tail(xs))) ;;\n"
      "val BK_addOne(x) = x + 1 ;;\n"
      "NEx (1) => 2 ;;\n"
      "NEx (3) => 5 ;;\n"
      "PEx (1) => 9 ;;\n"
      "PEx (7) => 15 ;;\n"
      "Synthesize (Int) => Int;;\n",
      "t");
  return build_knowledge(f);
}

InducedProgram add8_solution() {
  InducedProgram p;
  p.target_name = "target";
  p.functions.push_back({"target", apply(apply(var("comp"), var("g2")), var("g2")), "comp", true});
  p.functions.push_back({"g2", apply(apply(var("comp"), var("g3")), var("g3")), "comp", true});
  p.functions.push_back({"g3", apply(apply(var("comp"), var("BK_addOne")), var("BK_addOne")), "comp", true});
  return p;
}

ValuePtr eval_in(const Knowledge& k, const std::string& text, long long fuel,
                 const char** err = nullptr) {
  EvalCtx ctx;
  ctx.globals = k.values.get();
  ctx.fuel = fuel;
  ValuePtr v = eval_expr(ctx, nullptr, parse_expr_text(text));
  if (err) *err = ctx.error;
  return v;
}

}  // namespace

TEST_CASE("map of a background function over a literal list") {
  Knowledge k = add8_knowledge();
  ValuePtr v = eval_in(k, "map(BK_addOne)([1, 2])", 1000);
  REQUIRE(v);
  CHECK(value_equal(v, vlist({vint(2), vint(3)})));
}

TEST_CASE("the add8 program maps 1 to 9") {
  Knowledge k = add8_knowledge();
  InducedProgram p = add8_solution();
  auto order = program_topo_order(p);
  EvalCtx ctx;
  ctx.globals = k.values.get();
  ctx.fuel = 100000;
  std::vector<std::pair<std::string, ValuePtr>> overlay;
  REQUIRE(load_program(ctx, overlay, order));
  ValuePtr target = overlay.back().second;
  CHECK(overlay.back().first == "target");
  ValuePtr out = apply_value(ctx, target, vint(1));
  REQUIRE(out);
  CHECK(value_equal(out, vint(9)));
}

TEST_CASE("partial primitives fail instead of crashing") {
  Knowledge k = add8_knowledge();
  const char* err = nullptr;
  CHECK_FALSE(eval_in(k, "head(nil)", 1000, &err));
  CHECK(err != nullptr);
  CHECK_FALSE(eval_in(k, "tail(nil)", 1000));
  CHECK_FALSE(eval_in(k, "1 + true", 1000));
  CHECK_FALSE(eval_in(k, "head(1)", 1000));
}

TEST_CASE("budget is respected and monotone") {
  Knowledge k = add8_knowledge();
  // map over a 6-element list needs a few dozen applications
  const std::string expr = "map(BK_addOne)([1,2,3,4,5,6])";
  long long needed = -1;
  for (long long fuel = 1; fuel < 200; ++fuel) {
    if (eval_in(k, expr, fuel)) {
      needed = fuel;
      break;
    }
  }
  REQUIRE(needed > 0);
  ValuePtr ref = eval_in(k, expr, needed);
  for (long long fuel = needed; fuel < needed + 40; ++fuel) {
    ValuePtr v = eval_in(k, expr, fuel);
    REQUIRE(v);
    CHECK(value_equal(v, ref));
  }
  CHECK_FALSE(eval_in(k, expr, needed - 1));
}

TEST_CASE("evaluation is deterministic") {
  Knowledge k = add8_knowledge();
  ValuePtr a = eval_in(k, "filter(lambda (x) x < 3)([1,5,2,4])", 1000);
  ValuePtr b = eval_in(k, "filter(lambda (x) x < 3)([1,5,2,4])", 1000);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(value_equal(a, b));
  CHECK(value_equal(a, vlist({vint(1), vint(2)})));
}

TEST_CASE("load order puts dependencies before dependents") {
  InducedProgram p = add8_solution();
  auto order = program_topo_order(p);
  REQUIRE(order.size() == 3);
  CHECK(order[0]->name == "g3");
  CHECK(order[1]->name == "g2");
  CHECK(order[2]->name == "target");
}

TEST_CASE("droplasts load order starts at the innermost function") {
  InducedProgram p;
  p.target_name = "target";
  p.functions.push_back({"target", apply(apply(var("comp"), var("g2")), var("g3")), "comp", true});
  p.functions.push_back({"g2", apply(var("map"), var("g3")), "map", true});
  p.functions.push_back({"g3", apply(apply(var("comp"), var("g4")), var("BK_reverse")), "comp", true});
  p.functions.push_back({"g4", apply(apply(var("comp"), var("BK_reverse")), var("BK_tail")), "comp", true});
  auto order = program_topo_order(p);
  REQUIRE(order.size() == 4);
  CHECK(order[0]->name == "g4");
  CHECK(order[3]->name == "target");
}

TEST_CASE("loading an empty program changes nothing") {
  Knowledge k = add8_knowledge();
  EvalCtx ctx;
  ctx.globals = k.values.get();
  std::vector<std::pair<std::string, ValuePtr>> overlay;
  CHECK(load_program(ctx, overlay, {}));
  CHECK(overlay.empty());
}

TEST_CASE("induced names may not collide with definitions") {
  Knowledge k = add8_knowledge();
  InducedFunction clash{"map", var("BK_addOne"), "", true};
  std::vector<const InducedFunction*> order{&clash};
  EvalCtx ctx;
  ctx.globals = k.values.get();
  ctx.fuel = 1000;
  std::vector<std::pair<std::string, ValuePtr>> overlay;
  CHECK_FALSE(load_program(ctx, overlay, order));
}

TEST_CASE("equality is first order") {
  Knowledge k = add8_knowledge();
  ValuePtr ok = eval_in(k, "[1,2] = [1,2]", 100);
  REQUIRE(ok);
  CHECK(ok->bval);
  CHECK_FALSE(eval_in(k, "BK_addOne = BK_addOne", 100));
}

TEST_CASE("reverse primitive") {
  Knowledge k = add8_knowledge();
  ValuePtr v = eval_in(k, "reverse([1,2,3])", 100);
  REQUIRE(v);
  CHECK(value_equal(v, vlist({vint(3), vint(2), vint(1)})));
}
