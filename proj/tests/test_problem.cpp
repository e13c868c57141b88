#include <doctest.h>

#include "ruleforge/corpus.hpp"
#include "ruleforge/problem.hpp"

using namespace rf;

TEST_CASE("problem files parse into fully resolved problems") {
  std::string text =
      "# a toy problem\n"
      "name: toy\n"
      "config max_steps = 50\n"
      "config epsilon = 0\n"
      "op 1 = replace(Rt1, last(L1.1))\n"
      "op 2 = insert(G1, position(L1, 2))\n"
      "op 3 = delete(G1)\n"
      "op 4 = one_step_rew\n"
      "op 5 = replace_each([L1, Rt1], VList)\n"
      "bk: double(X) -> [X,X]\n"
      "pos: f([a]) -> a\n"
      "neg: f([a]) -> b  # trailing comment\n";
  Problem p = parse_problem(text, "<test>");
  CHECK(p.name == "toy");
  CHECK(p.config.at("max_steps") == 50);
  CHECK(p.operators.size() == 6);  // replace_each expanded to ids 5 and 6
  CHECK(p.operators[4].id == 5);
  CHECK(p.operators[5].id == 6);
  CHECK(p.e_pos.size() == 1);
  CHECK(p.e_neg.size() == 1);
  CHECK(p.k.size() == 1);
  CHECK(p.sig.n_f > 0);
}

TEST_CASE("problem file errors carry locations") {
  CHECK_THROWS_WITH_AS(parse_problem("pos: f( -> a\n", "x"), doctest::Contains("x:1"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_problem("op 1 = one_step_rew\nop 1 = delete(G1)\npos: f(a) -> a\n",
                                     "x"),
                       doctest::Contains("duplicate operator id"), ParseError);
  CHECK_THROWS_WITH_AS(parse_problem("pos: f(X) -> X\n", "x"), doctest::Contains("ground"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_problem("op 1 = replace(Rt1, map(&nosuch, L1))\npos: f(a) -> a\n",
                                     "x"),
                       doctest::Contains("unknown background function"), ParseError);
  CHECK_THROWS_AS(parse_problem("", "x"), ParseError);  // no positives
  CHECK_THROWS_AS(load_problem("/nonexistent/file.prob"), ParseError);
}

TEST_CASE("signature counts distinct vocabulary once") {
  std::vector<Rule> ep{parse_rule("last([c]) -> c"), parse_rule("last([d]) -> d")};
  std::vector<OperatorDef> ops{
      meta_replace(1, parse_position("L1.1"), parse_template("VHead"))};
  Signature sig = compute_signature(ep, {}, {}, ops);
  CHECK(sig.n_f == 2);  // last, cons
  CHECK(sig.n_c == 3);  // c, d, nil
  CHECK(sig.n_v == 1);  // VHead from the template
}

TEST_CASE("bundled problem files round-trip through the grammar") {
  for (const Problem& built :
       {last_problem(), odd_one_out_problem(), raven_demo_problem(),
        series_problem(series_fixtures()[0])}) {
    Problem reparsed = parse_problem(problem_to_text(built), built.name);
    CHECK(reparsed.name == built.name);
    REQUIRE(reparsed.e_pos.size() == built.e_pos.size());
    for (size_t i = 0; i < built.e_pos.size(); ++i)
      CHECK(rules_equal(reparsed.e_pos[i], built.e_pos[i]));
    REQUIRE(reparsed.operators.size() == built.operators.size());
    for (size_t i = 0; i < built.operators.size(); ++i) {
      CHECK(reparsed.operators[i].id == built.operators[i].id);
      CHECK(reparsed.operators[i].kind == built.operators[i].kind);
    }
    CHECK(reparsed.config == built.config);
    CHECK(reparsed.sig.n_f == built.sig.n_f);
    CHECK(reparsed.sig.n_c == built.sig.n_c);
    CHECK(reparsed.sig.n_v == built.sig.n_v);
  }
}

TEST_CASE("shipped problem files load") {
  Problem last = load_problem(bundled_problem_path("last.prob"));
  CHECK(last.e_pos.size() == 8);
  CHECK(last.e_neg.size() == 5);
  CHECK(last.operators.size() == 7);
  Problem ooo = load_problem(bundled_problem_path("ooo.prob"));
  CHECK(ooo.e_pos.size() == 35);
  for (const auto& e : ooo.e_pos) CHECK(e.rhs->kind == TermKind::Integer);
}
