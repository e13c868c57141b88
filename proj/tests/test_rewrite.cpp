#include <doctest.h>

#include "ruleforge/corpus.hpp"
#include "ruleforge/parser.hpp"
#include "ruleforge/rewrite.hpp"

using namespace rf;

namespace {

EvalBudget budget() { return EvalBudget{}; }

TermPtr nf_of(const Rewriter& rw, const std::string& term) {
  NormalFormResult r = rw.normal_form(parse_term(term));
  REQUIRE_FALSE(r.budget_exceeded);
  return r.term;
}

}  // namespace

TEST_CASE("normal form reduces background chains") {
  Rewriter rw({}, {}, {}, budget());
  CHECK(equal(nf_of(rw, "last(init(\"cdcdc\"))"), atom("d")));
  CHECK(equal(nf_of(rw, "c"), atom("c")));
  // stuck redexes stay in place
  CHECK(equal(nf_of(rw, "next(z)"), parse_term("next(z)")));
}

TEST_CASE("self-looping rules exhaust the budget") {
  Rewriter rw({parse_rule("f(X) -> f(X)")}, {}, {}, EvalBudget{100, 200});
  NormalFormResult r = rw.normal_form(parse_term("f(a)"));
  CHECK(r.budget_exceeded);
}

TEST_CASE("defined functors shadow builtins") {
  // `last` defined by the rule set never falls through to the builtin
  Rewriter rw({}, {}, {parse_rule("last([c]) -> c")}, budget());
  CHECK(equal(nf_of(rw, "last([c])"), atom("c")));
  CHECK(equal(nf_of(rw, "last([a,b])"), parse_term("last([a,b])")));  // stuck, not builtin
}

TEST_CASE("most specific applicable rule wins regardless of order") {
  std::vector<Rule> prog_a{parse_rule("last([VHead|VTail]) -> last(VTail)"),
                           parse_rule("last([VHead]) -> VHead")};
  std::vector<Rule> prog_b{prog_a[1], prog_a[0]};
  for (const auto& prog : {prog_a, prog_b}) {
    Rewriter rw(prog, {}, {}, budget());
    CHECK(equal(nf_of(rw, "last([a,b,c])"), atom("c")));
  }
}

TEST_CASE("guards select between rules, program order breaks ties") {
  std::vector<Rule> prog{parse_rule("f(V) when eq(mod(length(V),2),0) -> even"),
                         parse_rule("f(V) -> odd")};
  Rewriter rw(prog, {}, {}, budget());
  CHECK(equal(nf_of(rw, "f([a,b])"), atom("even")));
  CHECK(equal(nf_of(rw, "f([a])"), atom("odd")));
}

TEST_CASE("eval_guards normalizes under K only") {
  Rewriter rw({}, {parse_rule("flag(X) -> true")}, {}, budget());
  Substitution subst{{"V", parse_term("\"mab\"")}};
  CHECK(rw.eval_guards({parse_term("true")}, {}));
  CHECK(rw.eval_guards({parse_term("eq(mod(length(V),3),0)")}, subst));
  Substitution short_list{{"V", parse_term("\"ma\"")}};
  CHECK_FALSE(rw.eval_guards({parse_term("eq(mod(length(V),3),0)")}, short_list));
  CHECK(rw.eval_guards({parse_term("flag(a)")}, {}));
  // non-boolean normal forms fail the guard
  CHECK_FALSE(rw.eval_guards({parse_term("head([a])")}, {}));
}

TEST_CASE("body equations bind and check") {
  std::vector<Rule> prog{parse_rule("f(L) -> H = head(L), g(H)")};
  Rewriter rw(prog, {}, {}, budget());
  CHECK(equal(nf_of(rw, "f([x,y])"), parse_term("g(x)")));
}

TEST_CASE("normal form is deterministic and idempotent") {
  std::vector<Rule> prog{parse_rule("f(X) -> g(X)"), parse_rule("g(X) -> [X,X]")};
  Rewriter rw(prog, {}, {}, budget());
  TermPtr a = nf_of(rw, "f(u)");
  TermPtr b = nf_of(rw, "f(u)");
  CHECK(equal(a, b));
  NormalFormResult again = rw.normal_form(a);
  REQUIRE_FALSE(again.budget_exceeded);
  CHECK(equal(again.term, a));
}

TEST_CASE("extensional coverage of the recursive last program") {
  Problem p = last_problem();
  std::vector<Rule> sol = last_solution();
  // hand-traced: last([a,b,c]) -> last([b,c]) -> last([c]) -> c
  Rule target = parse_rule("last([a,b,c]) -> c");
  std::vector<Rule> base;
  for (size_t i = 0; i < p.e_pos.size(); ++i)
    if (!rules_equal(p.e_pos[i], target)) base.push_back(p.e_pos[i]);
  CHECK(covers(sol, {}, base, parse_rule("last([a,b,c]) -> c"), budget()));
  // a program containing the example itself covers it
  CHECK(covers({parse_rule("last([a,b,c]) -> c")}, {}, {}, parse_rule("last([a,b,c]) -> c"),
               budget()));
  // head-based guess gives a instead of c
  CHECK_FALSE(covers({parse_rule("last(V) -> head(V)")}, {}, base,
                     parse_rule("last([a,b,c]) -> c"), budget()));
}

TEST_CASE("coverage is monotone in the budget") {
  Problem p = last_problem();
  std::vector<Rule> sol = last_solution();
  EvalBudget small{12, 200};
  EvalBudget large{200, 200};
  for (size_t i = 0; i < p.e_pos.size(); ++i) {
    std::vector<Rule> base;
    for (size_t j = 0; j < p.e_pos.size(); ++j)
      if (j != i) base.push_back(p.e_pos[j]);
    bool with_small = covers(sol, {}, base, p.e_pos[i], small);
    bool with_large = covers(sol, {}, base, p.e_pos[i], large);
    if (with_small) CHECK(with_large);
  }
}

TEST_CASE("coverage counts match the per-example loop and the serial kernel") {
  Problem p = last_problem();
  std::vector<Rule> sol = last_solution();
  CoverageReport rep = coverage_counts(sol, p.e_pos, p.e_neg, p.k, budget());
  CoverageReport ser = coverage_counts_serial(sol, p.e_pos, p.e_neg, p.k, budget());
  CHECK(rep.covered_pos == ser.covered_pos);
  CHECK(rep.covered_neg == ser.covered_neg);
  CHECK(rep.budget_hits == ser.budget_hits);
  // brute-force oracle
  std::set<int> pos_oracle, neg_oracle;
  for (size_t i = 0; i < p.e_pos.size(); ++i) {
    std::vector<Rule> base;
    for (size_t j = 0; j < p.e_pos.size(); ++j)
      if (j != i) base.push_back(p.e_pos[j]);
    if (covers(sol, p.k, base, p.e_pos[i], budget())) pos_oracle.insert(static_cast<int>(i));
  }
  for (size_t i = 0; i < p.e_neg.size(); ++i)
    if (covers(sol, p.k, p.e_pos, p.e_neg[i], budget())) neg_oracle.insert(static_cast<int>(i));
  CHECK(rep.covered_pos == pos_oracle);
  CHECK(rep.covered_neg == neg_oracle);
  CHECK(rep.covered_pos.size() == 8);
  CHECK(rep.covered_neg.empty());
}

TEST_CASE("a program of the evidence itself covers everything") {
  Problem p = last_problem();
  CoverageReport rep = coverage_counts(p.e_pos, p.e_pos, p.e_neg, p.k, budget());
  CHECK(rep.covered_pos.size() == p.e_pos.size());
}
