#include "ruleforge/rewrite.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rf {

struct Rewriter::Ctx {
  int steps_left;
};

namespace {

struct BudgetExceeded {};

// lhs of a more specific than lhs of b: b matches a but not vice versa.
bool more_specific(const Rule& a, const Rule& b) {
  bool b_covers_a = match(b.lhs, a.lhs).has_value();
  if (!b_covers_a) return false;
  bool a_covers_b = match(a.lhs, b.lhs).has_value();
  return !a_covers_b;
}

}  // namespace

Rewriter::Rewriter(std::vector<Rule> prog_rules, std::vector<Rule> k_rules,
                   std::vector<Rule> base_rules, EvalBudget budget, const BKRegistry* registry)
    : budget_(budget), registry_(registry ? registry : &BKRegistry::builtin()) {
  rules_ = std::move(prog_rules);
  rules_.insert(rules_.end(), k_rules.begin(), k_rules.end());
  rules_.insert(rules_.end(), base_rules.begin(), base_rules.end());
  for (const auto& r : rules_)
    if (r.lhs->kind == TermKind::Apply) defined_.insert(r.lhs->sym);
}

bool Rewriter::rule_applicable(const Rule& r, const TermPtr& t, Substitution& subst,
                               Ctx& ctx) const {
  subst.clear();
  if (!match_into(r.lhs, t, subst)) return false;
  for (const auto& g : r.guards) {
    TermPtr gv = nf(substitute(g, subst), ctx, 0);
    if (!equal(gv, atom_true())) return false;  // non-boolean normal form fails the guard
  }
  for (const auto& b : r.body) {
    if (b->kind == TermKind::Apply && b->sym == "=" && b->args.size() == 2) {
      TermPtr rhs_nf = nf(substitute(b->args[1], subst), ctx, 0);
      if (!match_into(substitute(b->args[0], subst), rhs_nf, subst)) return false;
    } else {
      nf(substitute(b, subst), ctx, 0);  // bare items evaluate and are discarded
    }
  }
  return true;
}

const Rule* Rewriter::select_rule(const TermPtr& t, Substitution& out_subst, Ctx& ctx) const {
  const Rule* best = nullptr;
  Substitution best_subst;
  Substitution subst;
  for (const Rule& r : rules_) {
    if (!rule_applicable(r, t, subst, ctx)) continue;
    if (!best || more_specific(r, *best)) {
      best = &r;
      best_subst = subst;
    }
  }
  if (best) out_subst = std::move(best_subst);
  return best;
}

TermPtr Rewriter::reduce_root_once(const TermPtr& t, Ctx& ctx) const {
  if (t->kind != TermKind::Apply) return nullptr;
  Substitution subst;
  if (const Rule* r = select_rule(t, subst, ctx)) {
    if (--ctx.steps_left < 0) throw BudgetExceeded{};
    return substitute(r->rhs, subst);
  }
  if (!defined_.count(t->sym)) {
    if (const auto* entry = registry_->find(t->sym);
        entry && entry->arity == static_cast<int>(t->args.size())) {
      BKResult res = entry->fn(t->args);
      if (res.status == BKStatus::Ok) {
        if (--ctx.steps_left < 0) throw BudgetExceeded{};
        return res.values.front();  // deterministic: first branch
      }
    }
  }
  return nullptr;
}

TermPtr Rewriter::nf(const TermPtr& t, Ctx& ctx, int depth) const {
  if (depth > budget_.max_term_depth) throw BudgetExceeded{};
  TermPtr cur = t;
  switch (cur->kind) {
    case TermKind::Variable:
    case TermKind::Atom:
    case TermKind::Integer:
    case TermKind::Nil:
    case TermKind::BKRef:
    case TermKind::PosRef:
      return cur;
    default:
      break;
  }
  // innermost: children first, left to right
  std::vector<TermPtr> newargs;
  newargs.reserve(cur->args.size());
  bool changed = false;
  for (const auto& a : cur->args) {
    TermPtr na = nf(a, ctx, depth + 1);
    changed |= na.get() != a.get();
    newargs.push_back(std::move(na));
  }
  if (changed) {
    auto n = std::make_shared<Term>(*cur);
    n->args = std::move(newargs);
    cur = std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
  }
  while (true) {
    TermPtr red = reduce_root_once(cur, ctx);
    if (!red) return cur;
    cur = nf(red, ctx, depth);
  }
}

NormalFormResult Rewriter::normal_form(const TermPtr& t) const {
  Ctx ctx{budget_.max_rewrite_steps};
  try {
    TermPtr r = nf(t, ctx, 0);
    return {false, r};
  } catch (const BudgetExceeded&) {
    return {true, nullptr};
  }
}

bool Rewriter::eval_guards(const std::vector<TermPtr>& guards, const Substitution& subst) const {
  Ctx ctx{budget_.max_rewrite_steps};
  try {
    for (const auto& g : guards) {
      TermPtr gv = nf(substitute(g, subst), ctx, 0);
      if (!equal(gv, atom_true())) return false;
    }
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

std::vector<TermPtr> Rewriter::one_step_alternatives(const TermPtr& t) const {
  std::vector<TermPtr> out;
  auto push_unique = [&out](const TermPtr& v) {
    for (const auto& o : out)
      if (equal(o, v)) return;
    out.push_back(v);
  };
  // alternatives at the root
  if (t->kind == TermKind::Apply) {
    Substitution subst;
    for (const auto& r : rules_) {
      subst.clear();
      Ctx ctx{budget_.max_rewrite_steps};
      bool ok = false;
      try {
        ok = rule_applicable(r, t, subst, ctx);
      } catch (const BudgetExceeded&) {
        ok = false;
      }
      if (ok) push_unique(substitute(r.rhs, subst));
    }
    if (!defined_.count(t->sym)) {
      if (const auto* entry = registry_->find(t->sym);
          entry && entry->arity == static_cast<int>(t->args.size())) {
        BKResult res = entry->fn(t->args);
        if (res.status == BKStatus::Ok)
          for (const auto& v : res.values) push_unique(v);
      }
    }
  }
  // alternatives inside arguments
  for (size_t i = 0; i < t->args.size(); ++i) {
    for (const auto& sub : one_step_alternatives(t->args[i])) {
      auto n = std::make_shared<Term>(*t);
      n->args[i] = sub;
      push_unique(std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n))));
    }
  }
  return out;
}

bool covers(const std::vector<Rule>& prog, const std::vector<Rule>& k,
            const std::vector<Rule>& base, const Rule& example, const EvalBudget& budget,
            bool* budget_hit) {
  Rewriter rw(prog, k, base, budget);
  NormalFormResult l = rw.normal_form(example.lhs);
  if (l.budget_exceeded) {
    if (budget_hit) *budget_hit = true;
    return false;
  }
  NormalFormResult r = rw.normal_form(example.rhs);
  if (r.budget_exceeded) {
    if (budget_hit) *budget_hit = true;
    return false;
  }
  return equal(l.term, r.term);
}

namespace {

CoverageReport coverage_impl(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                             const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                             const EvalBudget& budget, bool parallel) {
  int np = static_cast<int>(e_pos.size());
  int nn = static_cast<int>(e_neg.size());
  std::vector<char> pos_ok(np, 0), neg_ok(nn, 0);
  std::vector<char> pos_hit(np, 0), neg_hit(nn, 0);

  auto pos_one = [&](int i) {
    std::vector<Rule> base;
    base.reserve(np - 1);
    for (int j = 0; j < np; ++j)
      if (j != i) base.push_back(e_pos[j]);
    bool hit = false;
    pos_ok[i] = covers(prog, k, base, e_pos[i], budget, &hit);
    pos_hit[i] = hit;
  };
  auto neg_one = [&](int i) {
    bool hit = false;
    neg_ok[i] = covers(prog, k, e_pos, e_neg[i], budget, &hit);
    neg_hit[i] = hit;
  };

#ifdef _OPENMP
  if (parallel && !omp_in_parallel()) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < np + nn; ++i) {
      if (i < np)
        pos_one(i);
      else
        neg_one(i - np);
    }
  } else
#endif
  {
    (void)parallel;
    for (int i = 0; i < np; ++i) pos_one(i);
    for (int i = 0; i < nn; ++i) neg_one(i);
  }

  CoverageReport rep;
  for (int i = 0; i < np; ++i) {
    if (pos_ok[i]) rep.covered_pos.insert(i);
    rep.budget_hits += pos_hit[i];
  }
  for (int i = 0; i < nn; ++i) {
    if (neg_ok[i]) rep.covered_neg.insert(i);
    rep.budget_hits += neg_hit[i];
  }
  return rep;
}

}  // namespace

CoverageReport coverage_counts(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                               const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                               const EvalBudget& budget) {
  return coverage_impl(prog, e_pos, e_neg, k, budget, true);
}

CoverageReport coverage_counts_serial(const std::vector<Rule>& prog,
                                      const std::vector<Rule>& e_pos,
                                      const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                                      const EvalBudget& budget) {
  return coverage_impl(prog, e_pos, e_neg, k, budget, false);
}

}  // namespace rf
