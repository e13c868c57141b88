#include <doctest.h>

#include "ruleforge/operators.hpp"
#include "ruleforge/parser.hpp"

using namespace rf;

namespace {

EvalBudget budget() { return EvalBudget{}; }

std::vector<Rule> apply1(const OperatorDef& op, const std::string& rule) {
  return apply_operator(op, parse_rule(rule), {}, {}, budget());
}

}  // namespace

TEST_CASE("replace builds recursive calls from rule material") {
  OperatorDef op = meta_replace(1, parse_position("Rt1"), parse_template("last(L1.1)"));
  auto out = apply1(op, "last([a,b,a,c]) -> c");
  REQUIRE(out.size() == 1);
  CHECK(print_rule(out[0]) == "last(\"abac\") -> last(a)");
}

TEST_CASE("replace generalises with a named template variable") {
  OperatorDef op = meta_replace(6, parse_position("L1.2"), parse_template("VTail"));
  auto out = apply1(op, "last([a,b,a,c]) -> c");
  REQUIRE(out.size() == 1);
  CHECK(print_rule(out[0]) == "last([a|VTail]) -> c");
  // the same variable appears when applied again to another position
  OperatorDef head_op = meta_replace(5, parse_position("L1.1"), parse_template("VHead"));
  auto out2 = apply_operator(head_op, out[0], {}, {}, budget());
  REQUIRE(out2.size() == 1);
  CHECK(print_rule(out2[0]) == "last([VHead|VTail]) -> c");
}

TEST_CASE("identity templates reproduce the rule") {
  OperatorDef op = meta_replace(1, parse_position("Rt1"), parse_template("Rt1"));
  auto out = apply1(op, "f(a) -> b");
  REQUIRE(out.size() == 1);
  CHECK(rules_equal(out[0], parse_rule("f(a) -> b")));
}

TEST_CASE("insert shifts the Right sequence and guards") {
  OperatorDef ins = meta_insert(1, parse_position("Rt1"), parse_template("c"));
  auto out = apply1(ins, "f(a) -> b");
  REQUIRE(out.size() == 1);
  CHECK(print_rule(out[0]) == "f(a) -> c, b");

  OperatorDef guard = meta_insert(2, parse_position("G1"), parse_template("position(L1, 3)"));
  auto out2 = apply1(guard, "thurstone(V) -> x");
  REQUIRE(out2.size() == 1);
  CHECK(print_rule(out2[0]) == "thurstone(V) when position(V,3) -> x");
}

TEST_CASE("inapplicable positions yield the empty set") {
  OperatorDef op = meta_replace(1, parse_position("L1.9"), parse_template("x"));
  CHECK(apply1(op, "f(a) -> b").empty());
  OperatorDef ins = meta_insert(2, parse_position("G1.1"), parse_template("x"));
  CHECK(apply1(ins, "f(a) -> b").empty());
  OperatorDef del = meta_delete(3, parse_position("G1"));
  CHECK(apply1(del, "f(a) -> b").empty());  // empty guard list
}

TEST_CASE("delete removes guard conjuncts and body items") {
  OperatorDef del = meta_delete(1, parse_position("G1"));
  auto out = apply1(del, "f(X) when eq(X,a) -> X");
  REQUIRE(out.size() == 1);
  CHECK(out[0].guards.empty());

  OperatorDef body_del = meta_delete(2, parse_position("Rt1"));
  auto out2 = apply1(body_del, "f(X) -> u, v, X");
  REQUIRE(out2.size() == 1);
  CHECK(out2[0].body.size() == 1);
  CHECK(print_rule(out2[0]) == "f(X) -> v, X");
}

TEST_CASE("insert then delete at a guard position restores the rule") {
  Rule r = parse_rule("f(X) -> X");
  OperatorDef ins = meta_insert(1, parse_position("G1"), parse_template("eq(X,a)"));
  auto mid = apply_operator(ins, r, {}, {}, budget());
  REQUIRE(mid.size() == 1);
  OperatorDef del = meta_delete(2, parse_position("G1"));
  auto back = apply_operator(del, mid[0], {}, {}, budget());
  REQUIRE(back.size() == 1);
  CHECK(rules_equal(back[0], r));
}

TEST_CASE("multi-valued templates branch one rule per replacement") {
  OperatorDef op = meta_replace(2, parse_position("Rt1"), parse_template("nSust(L1, Rt1)"));
  auto out = apply1(op, "trans([a,b,c]) -> [a,d,e,c]");
  REQUIRE(out.size() == 2);
  CHECK(print_rule(out[0]) == "trans(\"abc\") -> map(b=>\"de\",\"abc\")");
  CHECK(print_rule(out[1]) == "trans(\"abc\") -> map(b=>\"dec\",\"abc\")");
}

TEST_CASE("single-valued background templates stay symbolic") {
  OperatorDef op = meta_replace(1, parse_position("Rt1"), parse_template("oneSust(L1, Rt1)"));
  auto out = apply1(op, "trans([a,b,c]) -> [a,d,c]");
  REQUIRE(out.size() == 1);
  CHECK(print_rule(out[0]) == "trans(\"abc\") -> oneSust(\"abc\",\"adc\")");
}

TEST_CASE("one_step_rew reduces the symbolic call one step") {
  OperatorDef osr = one_step_rew(9);
  auto out = apply1(osr, "trans([a,b,c]) -> oneSust([a,b,c],[a,d,c])");
  REQUIRE(out.size() == 1);
  CHECK(print_rule(out[0]) == "trans(\"abc\") -> map(b=>d,\"abc\")");
  // and one more step applies the map
  auto out2 = apply_operator(osr, out[0], {}, {}, budget());
  REQUIRE(out2.size() == 1);
  CHECK(print_rule(out2[0]) == "trans(\"abc\") -> \"adc\"");
}

TEST_CASE("one_step_rew covers every rewrite position") {
  std::vector<Rule> k{parse_rule("f(a) -> b")};
  OperatorDef osr = one_step_rew(1);
  auto out = apply_operator(osr, parse_rule("g(X) -> h(f(a), f(a))"), {}, k, budget());
  // two positions rewrite to the same rule, deduplicated
  REQUIRE(out.size() == 2);
  bool has_left = false, has_right = false;
  for (const auto& r : out) {
    if (print_rule(r) == "g(X) -> h(b,f(a))") has_left = true;
    if (print_rule(r) == "g(X) -> h(f(a),b)") has_right = true;
  }
  CHECK(has_left);
  CHECK(has_right);
}

TEST_CASE("operator application never mutates its input") {
  Rule r = parse_rule("last([a,b]) -> c");
  std::string before = print_rule(r);
  OperatorDef op = meta_replace(1, parse_position("Rt1"), parse_template("last(L1.2)"));
  apply_operator(op, r, {}, {}, budget());
  CHECK(print_rule(r) == before);
}
