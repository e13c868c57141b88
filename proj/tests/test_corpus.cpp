#include <doctest.h>

#include "ruleforge/corpus.hpp"
#include "ruleforge/rewrite.hpp"

using namespace rf;

namespace {

EvalBudget budget() { return EvalBudget{}; }

CoverageReport cov(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos) {
  return coverage_counts(prog, e_pos, {}, {}, budget());
}

}  // namespace

TEST_CASE("series decomposition produces every prefix") {
  Rule e = parse_rule("thurstone(\"cdcdcdcd\") -> c");
  std::vector<Rule> inst = decompose_series(e);
  CHECK(inst.size() == 7);  // |s| - 1
  CHECK(print_rule(inst.front()) == "thurstone(\"cd\") -> c");
  CHECK(rules_equal(inst.back(), e));
  // every rhs is the actual next character of the source series
  std::string full = "cdcdcdcdc";
  for (size_t i = 0; i < inst.size(); ++i) {
    auto prefix = list_elems(inst[i].lhs->args[0]);
    REQUIRE(prefix.has_value());
    CHECK(prefix->size() == i + 2);
    CHECK(inst[i].rhs->sym == std::string(1, full[i + 2]));
  }
  CHECK_THROWS_AS(decompose_series(parse_rule("thurstone(\"ab\") -> c")), ParseError);
}

TEST_CASE("series fixtures cover their bundled instances and extrapolate") {
  for (const auto& fx : series_fixtures()) {
    CAPTURE(fx.id);
    Problem p = series_problem(fx);
    std::vector<Rule> sol = series_solution(fx);
    CoverageReport rep = cov(sol, p.e_pos);
    CHECK(rep.covered_pos.size() == p.e_pos.size());
    // extrapolation: the full series instance is covered and predicts the answer
    Rewriter rw(sol, {}, {}, budget());
    NormalFormResult nf = rw.normal_form(apply("thurstone", {str_list(fx.series)}));
    REQUIRE_FALSE(nf.budget_exceeded);
    CHECK(equal(nf.term, atom(std::string(1, fx.answer))));
  }
}

TEST_CASE("the problem seven is excluded as unsolved") {
  for (const auto& fx : series_fixtures()) CHECK(fx.id != 7);
  CHECK(series_fixtures().size() == 14);
}

TEST_CASE("odd one out encodings carry the published outliers") {
  const auto& items = odd_one_out_items();
  REQUIRE(items.size() == 35);
  CHECK(items[2].items == std::vector<std::string>{"aaa", "aab", "aac"});
  CHECK(items[2].solution == 1);
  Problem p = odd_one_out_problem();
  CHECK(p.e_pos.size() == 35);
  CHECK(print_term(p.e_pos[2].lhs) == "ooo([\"aaa\",\"aab\",\"aac\"])");
}

TEST_CASE("matrix decomposition pairs complete lines with prefixes") {
  RavenDecomposition d = decompose_matrix(demo_matrix(), demo_candidates());
  REQUIRE(d.train.size() == 4);
  REQUIRE(d.tests.size() == 8);
  // the first instance: full first row, first two cells of the second,
  // and the second row's third cell as the outcome
  const Rule& e1 = d.train[0];
  auto rows = list_elems(e1.lhs->args[0]);
  REQUIRE(rows.has_value());
  CHECK(rows->size() == 2);
  CHECK(list_elems((*rows)[0])->size() == 3);
  CHECK(list_elems((*rows)[1])->size() == 2);
  CHECK(print_term(e1.rhs) == "[{square,big,1,none,white}]");
  // training examples never include the gap cell
  for (const auto& t : d.train) CHECK(is_ground(t.lhs));

  RavenGrid bad;  // all gaps: malformed
  CHECK_THROWS_AS(decompose_matrix(bad, demo_candidates()), ParseError);
  CHECK_THROWS_AS(decompose_matrix(demo_matrix(), {}), ParseError);
}

TEST_CASE("the demo solution predicts candidate eight") {
  RavenDecomposition d = decompose_matrix(demo_matrix(), demo_candidates());
  std::vector<Rule> sol = raven_demo_solution();
  CHECK(cov(sol, d.train).covered_pos.size() == 4);
  int covered_candidate = 0;
  for (size_t k = 0; k < d.tests.size(); ++k) {
    CoverageReport rep = cov(sol, {d.tests[k][0]});
    if (rep.covered_pos.size() == 1) covered_candidate = static_cast<int>(k) + 1;
  }
  CHECK(covered_candidate == demo_correct_candidate());
}

TEST_CASE("relation-table fixtures cover their rows and pick the right cell") {
  REQUIRE(raven_table_rows().size() == 35);
  for (const auto& row : raven_table_rows()) {
    CAPTURE(row.id);
    RavenTableFixture fx = raven_table_fixture(row);
    RavenDecomposition d = decompose_matrix(fx.grid, fx.candidates);
    // row-wise training instances are the first two
    CoverageReport rep = cov(fx.solution, {d.train[0], d.train[1]});
    CHECK(rep.covered_pos.size() == 2);
    int chosen = 0;
    int hits = 0;
    for (size_t k = 0; k < d.tests.size(); ++k)
      if (cov(fx.solution, {d.tests[k][0]}).covered_pos.size() == 1) {
        chosen = static_cast<int>(k) + 1;
        ++hits;
      }
    CHECK(hits == 1);
    CHECK(chosen == fx.correct);
  }
}

TEST_CASE("transformation suite instances follow the named rewrites") {
  auto dc = gen_transform_suite(TransformKind::DToC, 20);
  REQUIRE(dc.size() == 20);
  CHECK(print_rule(dc[0]) == "trans(\"trade\") -> \"trace\"");
  auto over = gen_transform_suite(TransformKind::PrefixOver, 3);
  CHECK(print_rule(over[0]) == "trans(\"trade\") -> \"overtrade\"");
  auto mark = gen_transform_suite(TransformKind::SuffixMark, 1);
  CHECK(print_rule(mark[0]) == "trans(\"trade\") -> \"trademark\"");
  auto ing = gen_transform_suite(TransformKind::EToIng, 20);
  CHECK(print_rule(ing[0]) == "trans(\"trade\") -> \"trading\"");
  // words without the trigger are skipped: band has no final e
  for (const auto& r : ing) {
    auto w = list_elems(r.lhs->args[0]);
    CHECK((*w).back()->sym == "e");
  }
  CHECK_THROWS_AS(gen_transform_suite(TransformKind::DToC, 0), ParseError);
}

TEST_CASE("each suite solution covers its full instance set") {
  for (TransformKind k : {TransformKind::DToC, TransformKind::EToIng, TransformKind::DToPez,
                          TransformKind::PrefixOver, TransformKind::SuffixMark}) {
    CAPTURE(transform_kind_name(k));
    auto inst = gen_transform_suite(k, 20);
    REQUIRE(inst.size() == 20);
    CHECK(cov({transform_solution(k)}, inst).covered_pos.size() == 20);
  }
}

TEST_CASE("the operator set permutes ids consistently") {
  std::vector<int> order(20);
  for (int i = 0; i < 20; ++i) order[i] = 20 - i;
  auto ops = transform_operators(order);
  REQUIRE(ops.size() == 20);
  CHECK(ops[0].id == 20);
  CHECK(ops[19].id == 1);
  CHECK_THROWS_AS(transform_operators({1, 2, 3}), ParseError);
}

TEST_CASE("the last corpus matches the published evidence") {
  Problem p = last_problem();
  REQUIRE(p.e_pos.size() == 8);
  REQUIRE(p.e_neg.size() == 5);
  CHECK(cov(last_solution(), p.e_pos).covered_pos.size() == 8);
  CoverageReport rep = coverage_counts(last_solution(), p.e_pos, p.e_neg, p.k, budget());
  CHECK(rep.covered_neg.empty());
}
