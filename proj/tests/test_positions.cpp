#include <doctest.h>

#include "ruleforge/parser.hpp"
#include "ruleforge/rule.hpp"

using namespace rf;

namespace {

Rule member_rule() { return parse_rule("member([X|Y],Z) when true -> member(Y,Z)"); }

}  // namespace

TEST_CASE("subparts of the worked membership rule") {
  Rule r = member_rule();
  auto l1 = subpart(r, parse_position("L1"));
  REQUIRE(l1.has_value());
  CHECK(equal(*l1, parse_term("[X|Y]")));
  auto rt12 = subpart(r, parse_position("Rt1.2"));
  REQUIRE(rt12.has_value());
  CHECK(equal(*rt12, var("Z")));
}

TEST_CASE("position enumeration for a flat rule") {
  Rule r = parse_rule("f(a) -> b");
  std::vector<std::string> got;
  for (const auto& p : positions(r)) got.push_back(p.str());
  CHECK(got == std::vector<std::string>{"L", "L1", "G", "Rt", "Rt1"});
}

TEST_CASE("every enumerated position is subpart-valid and unique") {
  for (const char* text :
       {"f(a) -> b", "member([X|Y],Z) when true -> member(Y,Z)",
        "g([a,b],{c,d}) when eq(X,a) -> Y = head([a]), h(Y)"}) {
    Rule r = parse_rule(text);
    auto ps = positions(r);
    for (size_t i = 0; i < ps.size(); ++i) {
      CHECK(subpart(r, ps[i]).has_value());
      for (size_t j = i + 1; j < ps.size(); ++j) CHECK_FALSE(ps[i] == ps[j]);
    }
  }
}

TEST_CASE("subpart digs into list structure") {
  Rule r = parse_rule("last([a,b,a,c]) -> c");
  auto head = subpart(r, parse_position("L1.1"));
  REQUIRE(head.has_value());
  CHECK(equal(*head, atom("a")));
  auto tail = subpart(r, parse_position("L1.2"));
  REQUIRE(tail.has_value());
  CHECK(equal(*tail, parse_term("[b,a,c]")));
  CHECK(equal(*subpart(parse_rule("f(a) -> b"), parse_position("Rt1")), atom("b")));
  CHECK_FALSE(subpart(parse_rule("f(a) -> b"), parse_position("L1.9")).has_value());
}

TEST_CASE("splice insert shifts the Right sequence") {
  Rule r = parse_rule("f(a) -> b");
  auto ins = splice(r, parse_position("Rt1"), SpliceMode::Insert, atom("c"));
  REQUIRE(ins.has_value());
  CHECK(ins->body.size() == 1);
  CHECK(equal(ins->body[0], atom("c")));
  CHECK(equal(ins->rhs, atom("b")));
  CHECK(print_rule(*ins) == "f(a) -> c, b");
}

TEST_CASE("splice replace substitutes in place") {
  Rule r = parse_rule("f(a) -> b");
  auto rep = splice(r, parse_position("Rt1"), SpliceMode::Replace, atom("c"));
  REQUIRE(rep.has_value());
  CHECK(rules_equal(*rep, parse_rule("f(a) -> c")));
}

TEST_CASE("splice delete empties a guard list") {
  Rule r = parse_rule("f(X) when eq(X,a) -> X");
  auto del = splice(r, parse_position("G1"), SpliceMode::Delete, nullptr);
  REQUIRE(del.has_value());
  CHECK(del->guards.empty());
  // structural rhs cannot be deleted
  CHECK_FALSE(splice(r, parse_position("Rt1"), SpliceMode::Delete, nullptr).has_value());
}

TEST_CASE("insert then delete restores the rule at guard positions") {
  Rule r = parse_rule("f(X) when eq(X,a) -> X");
  for (const char* pos : {"G1", "G2"}) {
    auto ins = splice(r, parse_position(pos), SpliceMode::Insert, parse_term("neq(X,b)"));
    REQUIRE(ins.has_value());
    auto del = splice(*ins, parse_position(pos), SpliceMode::Delete, nullptr);
    REQUIRE(del.has_value());
    CHECK(rules_equal(*del, r));
  }
}

TEST_CASE("replace then subpart returns the inserted term") {
  Rule r = parse_rule("g([a,b],{c,d}) -> h(e)");
  TermPtr t = parse_term("[x,y]");
  for (const char* pos : {"L1", "L1.1", "Rt1.1", "Rt1"}) {
    auto sp = splice(r, parse_position(pos), SpliceMode::Replace, t);
    REQUIRE(sp.has_value());
    auto back = subpart(*sp, parse_position(pos));
    REQUIRE(back.has_value());
    CHECK(equal(*back, t));
  }
}

TEST_CASE("recursion detection") {
  CHECK(is_recursive(parse_rule("last([a,b,a,c]) -> last([b,a,c])")));
  CHECK_FALSE(is_recursive(parse_rule("last([c]) -> c")));
  CHECK(is_recursive(parse_rule("f(X) -> g(f(X))")));
  CHECK(is_recursive(parse_rule("f(X) -> Y = f(a), Y")));
}

TEST_CASE("rename_apart is structural and deterministic") {
  Rule r = parse_rule("f(X) -> X");
  Rule renamed = rename_apart(r, 1);
  CHECK(print_rule(renamed) == "f(X_1) -> X_1");
  Rule ground = parse_rule("f(a) -> b");
  CHECK(rules_equal(rename_apart(ground, 9), ground));
  CHECK(print_rule(rename_apart(parse_rule("f(X) -> g(Y)"), 2)) == "f(X_2) -> g(Y_2)");
  CHECK(is_recursive(rename_apart(parse_rule("f(X) -> f(X)"), 5)));
}

TEST_CASE("rule equivalence is up to renaming") {
  Rule a = parse_rule("f(X,Y) -> g(X)");
  Rule b = parse_rule("f(U,V) -> g(U)");
  Rule c = parse_rule("f(U,V) -> g(V)");
  CHECK(rules_equivalent(a, b));
  CHECK_FALSE(rules_equivalent(a, c));
  CHECK(rule_hash(a) == rule_hash(b));
}
