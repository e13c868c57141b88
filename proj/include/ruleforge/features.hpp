#pragma once

#include <array>

#include "ruleforge/mml.hpp"

namespace rf {

// Abstract description of a rule used as the action half of the Q table.
struct RuleFeatures {
  double size = 0;        // coding length in bits
  double pos_cov = 0;     // positives covered by the unit program
  double neg_cov = 0;     // negatives covered
  double num_vars = 0;    // variable occurrences
  double num_cons = 0;    // atom/integer leaf occurrences (list spines excluded)
  double num_funcs = 0;   // application/function-reference occurrences
  double num_structs = 0; // maximal lists and tuples
  double is_rec = 0;      // 0/1
  double opt = 0;         // unit-program optimality, cached for rewards

  std::array<double, 8> vec() const {
    return {size, pos_cov, neg_cov, num_vars, num_cons, num_funcs, num_structs, is_rec};
  }
  bool same_abstraction(const RuleFeatures& o) const { return vec() == o.vec(); }
};

struct StateFeatures {
  double global_opt = 0;
  double avg_rule_size = 0;
  double avg_prog_size = 0;

  std::array<double, 3> vec() const { return {global_opt, avg_rule_size, avg_prog_size}; }
  bool operator==(const StateFeatures& o) const { return vec() == o.vec(); }
};

RuleFeatures abstract_rule(const Rule& r, const std::vector<Rule>& e_pos,
                           const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                           const EvalBudget& budget, const Signature& sig,
                           const ScoringConfig& scoring);

StateFeatures abstract_state(const std::vector<RuleFeatures>& rules,
                             const std::vector<double>& program_opts,
                             const std::vector<int>& program_sizes);

}  // namespace rf
