#pragma once

#include <set>
#include <string>
#include <vector>

#include "ruleforge/bk.hpp"
#include "ruleforge/rule.hpp"

namespace rf {

struct EvalBudget {
  int max_rewrite_steps = 100;
  int max_term_depth = 200;
};

struct NormalFormResult {
  bool budget_exceeded = false;
  TermPtr term;  // valid when !budget_exceeded
};

// Innermost-leftmost reduction over an ordered rule set plus built-in
// background functions. When several rules apply at a redex, the most
// specific lhs wins (ties break by rule order). Built-ins never fire for
// functors the rule set defines.
class Rewriter {
 public:
  Rewriter(std::vector<Rule> prog_rules, std::vector<Rule> k_rules, std::vector<Rule> base_rules,
           EvalBudget budget, const BKRegistry* registry = nullptr);

  NormalFormResult normal_form(const TermPtr& t) const;

  // Single rewrite steps available at any position inside `t` (used by the
  // one_step_rew operator). Results are deduplicated.
  std::vector<TermPtr> one_step_alternatives(const TermPtr& t) const;

  bool eval_guards(const std::vector<TermPtr>& guards, const Substitution& subst) const;

 private:
  struct Ctx;
  std::vector<Rule> rules_;  // prog ++ K ++ base, in order
  std::set<std::string> defined_;
  EvalBudget budget_;
  const BKRegistry* registry_;

  TermPtr nf(const TermPtr& t, Ctx& ctx, int depth) const;
  TermPtr reduce_root_once(const TermPtr& t, Ctx& ctx) const;
  const Rule* select_rule(const TermPtr& t, Substitution& out_subst, Ctx& ctx) const;
  bool rule_applicable(const Rule& r, const TermPtr& t, Substitution& subst, Ctx& ctx) const;
};

struct CoverageReport {
  std::set<int> covered_pos;
  std::set<int> covered_neg;
  int budget_hits = 0;
};

// True iff lhs(e) and rhs(e) share a normal form under prog ++ K ++ base.
// Budget exhaustion counts as not covered.
bool covers(const std::vector<Rule>& prog, const std::vector<Rule>& k,
            const std::vector<Rule>& base, const Rule& example, const EvalBudget& budget,
            bool* budget_hit = nullptr);

// Extensional coverage counts: positives use E+ minus the example itself as
// base rules, negatives the full E+.
CoverageReport coverage_counts(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                               const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                               const EvalBudget& budget);
// Serial reference implementation; the parallel kernel must agree with it.
CoverageReport coverage_counts_serial(const std::vector<Rule>& prog,
                                      const std::vector<Rule>& e_pos,
                                      const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                                      const EvalBudget& budget);

}  // namespace rf
