#pragma once

#include <map>
#include <string>
#include <vector>

#include "ruleforge/operators.hpp"
#include "ruleforge/parser.hpp"

namespace rf {

// A learning task: evidence, rule-form background knowledge, operators and
// per-problem configuration overrides. The signature is computed once from
// the evidence, K and the operator templates.
struct Problem {
  std::string name;
  std::vector<Rule> e_pos;
  std::vector<Rule> e_neg;
  std::vector<Rule> k;
  std::vector<OperatorDef> operators;
  Signature sig;
  std::map<std::string, double> config;

  std::vector<int> op_ids() const {
    std::vector<int> ids;
    for (const auto& o : operators) ids.push_back(o.id);
    return ids;
  }
};

Signature compute_signature(const std::vector<Rule>& e_pos, const std::vector<Rule>& e_neg,
                            const std::vector<Rule>& k,
                            const std::vector<OperatorDef>& operators);

// Line-oriented problem files: `pos:`/`neg:` example rules, `bk:` rules,
// `op N = ...` declarations, `config key = value`, `#` comments. The
// replace_each form expands a position list into consecutive operator ids.
Problem parse_problem(const std::string& text, const std::string& origin);
Problem load_problem(const std::string& path);

// Resolves a bundled problem name against RULEFORGE_PROBLEM_DIR.
std::string bundled_problem_path(const std::string& filename);

}  // namespace rf
