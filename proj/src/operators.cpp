#include "ruleforge/operators.hpp"

#include <set>

namespace rf {

OperatorDef meta_replace(int id, RulePosition pos, TermPtr tmpl) {
  return {id, OpKind::Replace, std::move(pos), std::move(tmpl)};
}

OperatorDef meta_insert(int id, RulePosition pos, TermPtr tmpl) {
  return {id, OpKind::Insert, std::move(pos), std::move(tmpl)};
}

OperatorDef meta_delete(int id, RulePosition pos) {
  return {id, OpKind::Delete, std::move(pos), nullptr};
}

OperatorDef one_step_rew(int id) { return {id, OpKind::OneStepRew, {}, nullptr}; }

std::optional<TermPtr> instantiate_template(const TermPtr& tmpl, const Rule& rule) {
  if (tmpl->kind == TermKind::PosRef) return subpart(rule, tmpl->pos);
  if (tmpl->args.empty()) return tmpl;
  auto n = std::make_shared<Term>(*tmpl);
  bool changed = false;
  for (auto& a : n->args) {
    auto r = instantiate_template(a, rule);
    if (!r) return std::nullopt;
    changed |= r->get() != a.get();
    a = *r;
  }
  if (!changed) return tmpl;
  return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
}

namespace {

void push_rule(std::vector<Rule>& out, std::set<uint64_t>& seen, Rule r) {
  uint64_t h = rule_hash(r);
  if (!seen.insert(h).second) {
    for (const auto& o : out)
      if (rules_equivalent(o, r)) return;
  }
  out.push_back(std::move(r));
}

}  // namespace

std::vector<Rule> apply_operator(const OperatorDef& op, const Rule& rule,
                                 const std::vector<Rule>& prog, const std::vector<Rule>& k,
                                 const EvalBudget& budget) {
  std::vector<Rule> out;
  std::set<uint64_t> seen;
  switch (op.kind) {
    case OpKind::Delete: {
      auto r = splice(rule, op.pos, SpliceMode::Delete, nullptr);
      if (r) push_rule(out, seen, *r);
      return out;
    }
    case OpKind::Replace:
    case OpKind::Insert: {
      auto inst = instantiate_template(op.tmpl, rule);
      if (!inst) return out;
      std::vector<TermPtr> values{*inst};
      const TermPtr& t = *inst;
      if (t->kind == TermKind::Apply) {
        const auto* entry = BKRegistry::builtin().find(t->sym);
        if (entry && entry->multi_valued && entry->arity == static_cast<int>(t->args.size())) {
          BKResult res = entry->fn(t->args);
          if (res.status == BKStatus::Ok) values = res.values;
        }
      }
      SpliceMode mode = op.kind == OpKind::Replace ? SpliceMode::Replace : SpliceMode::Insert;
      for (const auto& v : values) {
        auto r = splice(rule, op.pos, mode, v);
        if (r) push_rule(out, seen, *r);
      }
      return out;
    }
    case OpKind::OneStepRew: {
      Rewriter rw(prog, k, {}, budget);
      for (const auto& alt : rw.one_step_alternatives(rule.rhs)) {
        Rule r = rule;
        r.rhs = alt;
        push_rule(out, seen, std::move(r));
      }
      for (size_t i = 0; i < rule.body.size(); ++i) {
        for (const auto& alt : rw.one_step_alternatives(rule.body[i])) {
          Rule r = rule;
          r.body[i] = alt;
          push_rule(out, seen, std::move(r));
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace rf
