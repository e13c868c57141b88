#pragma once

#include <optional>
#include <vector>

#include "ruleforge/rewrite.hpp"
#include "ruleforge/rule.hpp"

namespace rf {

enum class OpKind { Replace, Insert, Delete, OneStepRew };

// A rule transformer synthesized by a meta-operator: a position plus a
// template whose PosRef leaves resolve against the rule being transformed.
// Template variables are inserted by name, so repeated applications of the
// same generalisation operator share one variable.
struct OperatorDef {
  int id = 0;
  OpKind kind = OpKind::Replace;
  RulePosition pos;
  TermPtr tmpl;  // Replace/Insert only
};

OperatorDef meta_replace(int id, RulePosition pos, TermPtr tmpl);
OperatorDef meta_insert(int id, RulePosition pos, TermPtr tmpl);
OperatorDef meta_delete(int id, RulePosition pos);
OperatorDef one_step_rew(int id);

// Resolves PosRef leaves against `rule`; nullopt when a position is invalid.
std::optional<TermPtr> instantiate_template(const TermPtr& tmpl, const Rule& rule);

// Applies the operator; inapplicability is the empty set. Multi-valued
// template roots (nSust) yield one rule per branch when their arguments are
// ground; otherwise the call is inserted symbolically.
std::vector<Rule> apply_operator(const OperatorDef& op, const Rule& rule,
                                 const std::vector<Rule>& prog, const std::vector<Rule>& k,
                                 const EvalBudget& budget);

}  // namespace rf
