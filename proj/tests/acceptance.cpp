#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ruleforge/bench.hpp"
#include "ruleforge/cli.hpp"
#include "ruleforge/corpus.hpp"
#include "ruleforge/stats.hpp"

using namespace rf;

namespace {

using clock_t_ = std::chrono::steady_clock;

double secs_since(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

void verdict(int criterion, bool ok, const std::string& detail) {
  std::printf("[criterion %d] %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", detail);
}

LearnConfig config_for(const Problem& p, uint64_t seed) {
  LearnConfig cfg;
  cfg.apply_overrides(p.config);
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("criterion 1: odd-one-out fixed-rule coverage") {
  auto t0 = clock_t_::now();
  Problem p = odd_one_out_problem();
  EvalBudget budget;
  CoverageReport ham = coverage_counts({ooo_hamming_rule()}, p.e_pos, p.e_neg, p.k, budget);
  CoverageReport dif = coverage_counts({ooo_diffobj_rule()}, p.e_pos, p.e_neg, p.k, budget);
  bool item31 = ham.covered_pos.count(30) == 0 && dif.covered_pos.count(30) == 0;
  double elapsed = secs_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "hamming %zu/35 (want 28), diffObj %zu/35 (want 17), item 31 %s, %.2fs",
                ham.covered_pos.size(), dif.covered_pos.size(),
                item31 ? "uncovered" : "COVERED", elapsed);
  verdict(1, ham.covered_pos.size() == 28 && dif.covered_pos.size() == 17 && item31 &&
                 elapsed < 1.0,
          buf);
}

TEST_CASE("criterion 2: letter-series fixed solutions and seeded learning") {
  auto t0 = clock_t_::now();
  EvalBudget budget;
  int covered_fixtures = 0;
  for (const auto& fx : series_fixtures()) {
    Problem p = series_problem(fx);
    std::vector<Rule> sol = series_solution(fx);
    CoverageReport rep = coverage_counts(sol, p.e_pos, p.e_neg, p.k, budget);
    Rewriter rw(sol, {}, {}, budget);
    NormalFormResult nf = rw.normal_form(apply("thurstone", {str_list(fx.series)}));
    bool extrapolates =
        !nf.budget_exceeded && equal(nf.term, atom(std::string(1, fx.answer)));
    if (rep.covered_pos.size() == p.e_pos.size() && extrapolates) ++covered_fixtures;
  }
  double fixed_elapsed = secs_since(t0);
  bool fixed_ok = covered_fixtures == 14 && fixed_elapsed < 5.0;

  int learn_ok = 0, learn_total = 0;
  std::string steps_note;
  for (int id : {1, 5, 13}) {
    const SeriesFixture* fx = nullptr;
    for (const auto& f : series_fixtures())
      if (f.id == id) fx = &f;
    Problem p = series_problem(*fx);
    int solved = 0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      LearnConfig cfg = config_for(p, seed);
      cfg.max_steps = 2000;
      cfg.stop_on_complete = true;
      LearnResult r = run(p, cfg);
      if (r.solution_step && *r.solution_step <= 2000) ++solved;
    }
    steps_note += " p" + std::to_string(id) + ":" + std::to_string(solved) + "/5";
    if (solved >= 4) ++learn_ok;
    ++learn_total;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "fixtures %d/14 covered+extrapolated in %.2fs; learning%s (need 4/5 each)",
                covered_fixtures, fixed_elapsed, steps_note.c_str());
  verdict(2, fixed_ok && learn_ok == learn_total, buf);
}

TEST_CASE("criterion 3: last-element end-to-end learning") {
  Problem p = last_problem();
  int solved = 0;
  double worst = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto t0 = clock_t_::now();
    LearnConfig cfg = config_for(p, seed);
    cfg.max_steps = 2000;
    cfg.stop_on_complete = true;
    LearnResult r = run(p, cfg);
    double elapsed = secs_since(t0);
    worst = std::max(worst, elapsed);
    if (!r.solution_step) continue;
    const ScoredProgram& best = best_solution(r);
    std::vector<Rule> prog;
    for (int id : best.rule_ids) prog.push_back(r.rules[id].rule);
    CoverageReport rep = coverage_counts(prog, p.e_pos, p.e_neg, p.k, cfg.budget);
    if (rep.covered_pos.size() == 8 && rep.covered_neg.empty() && elapsed < 60.0) ++solved;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/5 seeds reached 8/8 and 0/5 (worst run %.1fs)", solved,
                worst);
  verdict(3, solved >= 4, buf);
}

TEST_CASE("criterion 4: transfer learning reduces steps") {
  auto t0 = clock_t_::now();
  TransferBenchResult res = run_transfer_bench(5);
  double elapsed = secs_since(t0);
  double reduction = res.mean_scratch_all > 0
                         ? 1.0 - res.mean_reuse_all / res.mean_scratch_all
                         : 0.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "reuse<=scratch in %d/25 cells (need 20), mean %.1f -> %.1f steps "
                "(%.1f%% reduction, need 10%%), %.0fs (cap 1800)",
                res.cells_improved, res.mean_scratch_all, res.mean_reuse_all, 100 * reduction,
                elapsed);
  verdict(4, res.cells_improved >= 20 && reduction >= 0.10 && elapsed < 1800.0, buf);
}

namespace {

// independent counting walk for the coding-length oracle
void acc_walk(const TermPtr& t, int& f, int& c, int& v) {
  switch (t->kind) {
    case TermKind::Variable: ++v; return;
    case TermKind::Atom:
    case TermKind::Integer:
    case TermKind::Nil: ++c; return;
    case TermKind::BKRef:
    case TermKind::PosRef: ++f; return;
    case TermKind::Mapping:
      acc_walk(t->args[0], f, c, v);
      acc_walk(t->args[1], f, c, v);
      return;
    default:
      ++f;
      for (const auto& a : t->args) acc_walk(a, f, c, v);
  }
}

TermPtr acc_rand_term(SplitRng& rng, int depth) {
  switch (rng.below(depth <= 0 ? 4 : 7)) {
    case 0: return atom("q");
    case 1: return var("V" + std::to_string(rng.below(3)));
    case 2: return integer(static_cast<long long>(rng.below(20)));
    case 3: return nil();
    case 4: return cons(acc_rand_term(rng, depth - 1), acc_rand_term(rng, depth - 1));
    case 5: return tuple({acc_rand_term(rng, depth - 1), acc_rand_term(rng, depth - 1)});
    default: return apply("w", {acc_rand_term(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("criterion 5: coding-length oracle and update-rule hand cases") {
  SplitRng rng(23, "acc_mml");
  Signature sig{6, 13, 4};
  bool mml_ok = true;
  for (int i = 0; i < 50; ++i) {
    Rule r;
    r.lhs = apply("fn", {acc_rand_term(rng, 3), acc_rand_term(rng, 2)});
    if (rng.below(2)) r.guards.push_back(acc_rand_term(rng, 2));
    r.rhs = acc_rand_term(rng, 3);
    int f = 0, c = 0, v = 0;
    acc_walk(r.lhs, f, c, v);
    for (const auto& g : r.guards) acc_walk(g, f, c, v);
    acc_walk(r.rhs, f, c, v);
    double oracle = f * std::log2(sig.n_f + 1.0) + c * std::log2(sig.n_c + 1.0) +
                    v * std::log2(sig.n_v + 1.0);
    if (std::fabs(msg_len_rule(r, sig) - oracle) > 1e-12 * (1 + oracle)) mml_ok = false;
  }

  // update-rule hand computations, exact to 1e-12
  StateFeatures s{1, 2, 3};
  RuleFeatures rf;
  rf.size = 5;
  QModel m;
  m.constant = true;
  m.constant_value = 2.0;
  std::vector<Candidate> next{{1, 0, rf}};
  bool q_ok = true;
  {
    QTable t;
    t.upsert(s, 1, rf, 1.0);
    update_q(t, m, s, 1, rf, -10.0, s, next, RLConfig{0.5, 0.5, 1.0, 10});
    q_ok &= std::fabs(t.rows()[0].q - (-4.0)) <= 1e-12;
  }
  {
    QTable t;
    t.upsert(s, 1, rf, 0.375);
    update_q(t, m, s, 1, rf, -3.0, s, next, RLConfig{0.0, 0.5, 0.375, 10});
    q_ok &= std::fabs(t.rows()[0].q - 0.375) <= 1e-12;
  }
  {
    QTable t;
    t.upsert(s, 1, rf, 1.0);
    update_q(t, m, s, 1, rf, -7.25, s, next, RLConfig{1.0, 0.0, 1.0, 10});
    q_ok &= std::fabs(t.rows()[0].q - (-7.25)) <= 1e-12;
  }
  {
    QTable t;
    t.upsert(s, 1, rf, 2.0);
    update_q(t, m, s, 1, rf, 6.0, s, next, RLConfig{0.25, 1.0, 2.0, 10});
    q_ok &= std::fabs(t.rows()[0].q - (0.25 * (6.0 + 2.0) + 0.75 * 2.0)) <= 1e-12;
  }
  verdict(5, mml_ok && q_ok,
          std::string("coding-length walk ") + (mml_ok ? "matches" : "DIFFERS") +
              ", update-rule cases " + (q_ok ? "exact" : "OFF"));
}

TEST_CASE("criterion 6: regression recovery and uniform selection") {
  // recover q = w . features + b within 1e-6
  SplitRng rng(31, "acc_reg");
  QTable t;
  std::vector<double> w{0.5, -1.25, 2.0};  // state weights
  double b = 3.5, wsize = -0.75, wcov = 1.5;
  for (int i = 0; i < 300; ++i) {
    StateFeatures s{static_cast<double>(rng.below(40)) / 4.0,
                    static_cast<double>(rng.below(30)),
                    1.0 + static_cast<double>(rng.below(3))};
    RuleFeatures f;
    f.size = static_cast<double>(rng.below(25));
    f.pos_cov = static_cast<double>(rng.below(9));
    f.num_vars = static_cast<double>(rng.below(5));
    int op = 1 + static_cast<int>(rng.below(4));
    double q = w[0] * s.global_opt + w[1] * s.avg_rule_size + w[2] * s.avg_prog_size +
               wsize * f.size + wcov * f.pos_cov + b;
    t.upsert(s, op, f, q).q = q;
  }
  QModel model = train_model(t);
  double max_err = 0;
  SplitRng probe(32, "acc_probe");
  for (int i = 0; i < 100; ++i) {
    StateFeatures s{static_cast<double>(probe.below(40)) / 4.0,
                    static_cast<double>(probe.below(30)),
                    1.0 + static_cast<double>(probe.below(3))};
    RuleFeatures f;
    f.size = static_cast<double>(probe.below(25));
    f.pos_cov = static_cast<double>(probe.below(9));
    f.num_vars = static_cast<double>(probe.below(5));
    double want = w[0] * s.global_opt + w[1] * s.avg_rule_size + w[2] * s.avg_prog_size +
                  wsize * f.size + wcov * f.pos_cov + b;
    max_err = std::max(max_err,
                       std::fabs(model.predict(s, 1 + static_cast<int>(probe.below(4)), f) -
                                 want));
  }

  // constant-q tables select uniformly (chi-squared over 3000 draws)
  QModel constant;
  constant.constant = true;
  constant.constant_value = 1.0;
  RuleFeatures shared;
  shared.size = 9;
  std::vector<Candidate> cands{{1, 0, shared}, {1, 1, shared}, {1, 2, shared}};
  SplitRng tie(77, "acc_tie");
  std::vector<long long> counts(3, 0);
  for (int i = 0; i < 3000; ++i)
    ++counts[select_action(constant, StateFeatures{0, 0, 1}, cands, tie)];
  double pval = chi2_uniform_pvalue(counts);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "weight recovery max err %.2e (cap 1e-6), selection counts %lld/%lld/%lld p=%.3f",
                max_err, counts[0], counts[1], counts[2], pval);
  verdict(6, max_err <= 1e-6 && pval > 0.01, buf);
}

TEST_CASE("criterion 7: determinism and round trips") {
  Problem p = last_problem();
  LearnConfig cfg = config_for(p, 99);
  cfg.max_steps = 150;
  cfg.stop_on_complete = false;
  LearnResult a = run(p, cfg);
  LearnResult b = run(p, cfg);
  bool traces_equal = trace_to_csv(a.trace) == trace_to_csv(b.trace);

  std::string csv = policy_to_csv(a.q_table);
  bool policy_roundtrip = policy_to_csv(policy_from_csv(csv)) == csv;

  std::string text = problem_to_text(odd_one_out_problem());
  bool problem_roundtrip = problem_to_text(parse_problem(text, "ooo")) == text;

  // unbounded pairwise unions equal the literal brute force while |P| <= 10
  Problem toy;
  toy.name = "toy7";
  for (const char* s : {"f([a]) -> one", "f([b]) -> one", "f([a,a]) -> two", "f([b,b]) -> two"})
    toy.e_pos.push_back(parse_rule(s));
  toy.operators = {meta_replace(1, parse_position("L1.1"), parse_template("VH")),
                   meta_replace(2, parse_position("L1.2.1"), parse_template("VI")),
                   meta_replace(3, parse_position("Rt1"), parse_template("L1.1"))};
  toy.sig = compute_signature(toy.e_pos, toy.e_neg, toy.k, toy.operators);
  LearnConfig c1;
  c1.max_steps = 6;
  c1.epsilon = 0;
  c1.seed = 4;
  c1.pair_cap = 0;
  LearnConfig c2 = c1;
  c2.pair_cap = 9999;
  LearnResult r1 = run(toy, c1);
  LearnResult r2 = run(toy, c2);
  bool cap_equal = trace_to_csv(r1.trace) == trace_to_csv(r2.trace) &&
                   r1.programs.size() == r2.programs.size();

  std::string detail = std::string("traces ") + (traces_equal ? "identical" : "DIFFER") +
                       ", policy csv " + (policy_roundtrip ? "exact" : "LOSSY") +
                       ", problem text " + (problem_roundtrip ? "exact" : "LOSSY") +
                       ", pair-cap scan " + (cap_equal ? "equals brute force" : "DIVERGES");
  verdict(7, traces_equal && policy_roundtrip && problem_roundtrip && cap_equal, detail);
}

TEST_CASE("criterion 8: the worked matrix problem") {
  auto t0 = clock_t_::now();
  Problem p = raven_demo_problem();
  LearnConfig cfg = config_for(p, 1);
  cfg.max_steps = 2000;
  cfg.stop_on_complete = true;
  LearnResult r = run(p, cfg);
  bool solved = r.solution_step.has_value();
  bool prediction_ok = false;
  int chosen = 0;
  if (solved) {
    const ScoredProgram& best = best_solution(r);
    std::vector<Rule> prog;
    for (int id : best.rule_ids) prog.push_back(r.rules[id].rule);
    RavenDecomposition d = decompose_matrix(demo_matrix(), demo_candidates());
    TermPtr expected = parse_term("[{diamond,big,1,none,black}]");
    Rewriter rw(prog, {}, {}, cfg.budget);
    NormalFormResult nf = rw.normal_form(d.tests[0][0].lhs);
    prediction_ok = !nf.budget_exceeded && equal(nf.term, expected);
    int hits = 0;
    for (size_t k = 0; k < d.tests.size(); ++k) {
      CoverageReport rep = coverage_counts(prog, {d.tests[k][0]}, {}, {}, cfg.budget);
      if (rep.covered_pos.size() == 1) {
        chosen = static_cast<int>(k) + 1;
        ++hits;
      }
    }
    prediction_ok = prediction_ok && hits == 1 && chosen == demo_correct_candidate();
  }
  double elapsed = secs_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "solved=%d candidate=%d (want 8) prediction diamond/big/1/none/black %s, %.1fs",
                solved ? 1 : 0, chosen, prediction_ok ? "matches" : "OFF", elapsed);
  verdict(8, solved && prediction_ok && elapsed < 60.0, buf);
}
