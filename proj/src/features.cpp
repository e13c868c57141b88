#include "ruleforge/features.hpp"

namespace rf {

namespace {

struct FeatCounts {
  int vars = 0, cons = 0, funcs = 0, structs = 0;
};

void walk(const TermPtr& t, FeatCounts& c, bool in_list_spine) {
  switch (t->kind) {
    case TermKind::Variable:
      ++c.vars;
      return;
    case TermKind::Atom:
    case TermKind::Integer:
      ++c.cons;
      return;
    case TermKind::Nil:
      if (!in_list_spine) ++c.structs;  // standalone empty list
      return;
    case TermKind::Apply:
    case TermKind::BKRef:
    case TermKind::PosRef:
      ++c.funcs;
      for (const auto& a : t->args) walk(a, c, false);
      return;
    case TermKind::Mapping:
      walk(t->args[0], c, false);
      walk(t->args[1], c, false);
      return;
    case TermKind::Tuple:
      ++c.structs;
      for (const auto& a : t->args) walk(a, c, false);
      return;
    case TermKind::Cons:
      if (!in_list_spine) ++c.structs;  // each maximal list counts once
      walk(t->args[0], c, false);
      walk(t->args[1], c, true);
      return;
  }
}

void walk_rule(const Rule& r, FeatCounts& c) {
  walk(r.lhs, c, false);
  for (const auto& g : r.guards) walk(g, c, false);
  for (const auto& b : r.body) walk(b, c, false);
  walk(r.rhs, c, false);
}

}  // namespace

RuleFeatures abstract_rule(const Rule& r, const std::vector<Rule>& e_pos,
                           const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                           const EvalBudget& budget, const Signature& sig,
                           const ScoringConfig& scoring) {
  RuleFeatures f;
  f.size = msg_len_rule(r, sig);
  std::vector<Rule> unit{r};
  CoverageReport rep = coverage_counts(unit, e_pos, e_neg, k, budget);
  f.pos_cov = static_cast<double>(rep.covered_pos.size());
  f.neg_cov = static_cast<double>(rep.covered_neg.size());
  FeatCounts c;
  walk_rule(r, c);
  f.num_vars = c.vars;
  f.num_cons = c.cons;
  f.num_funcs = c.funcs;
  f.num_structs = c.structs;
  f.is_rec = is_recursive(r) ? 1 : 0;
  double residual = 0;
  for (size_t i = 0; i < e_pos.size(); ++i)
    if (!rep.covered_pos.count(static_cast<int>(i))) residual += msg_len_rule(e_pos[i], sig);
  for (int i : rep.covered_neg) residual += msg_len_rule(e_neg[i], sig);
  f.opt = -scoring.beta1 * f.size - scoring.beta2 * residual;
  return f;
}

StateFeatures abstract_state(const std::vector<RuleFeatures>& rules,
                             const std::vector<double>& program_opts,
                             const std::vector<int>& program_sizes) {
  if (rules.empty() || program_opts.empty()) throw EmptyPopulation{};
  StateFeatures s;
  s.global_opt = global_optimality(program_opts);
  double size_sum = 0;
  for (const auto& r : rules) size_sum += r.size;
  s.avg_rule_size = size_sum / static_cast<double>(rules.size());
  double card_sum = 0;
  for (int n : program_sizes) card_sum += n;
  s.avg_prog_size = card_sum / static_cast<double>(program_sizes.size());
  return s;
}

}  // namespace rf
