#pragma once

#include <optional>

#include "ruleforge/problem.hpp"
#include "ruleforge/qpolicy.hpp"

namespace rf {

struct LearnConfig {
  int max_steps = 2000;
  double epsilon = 0.01;
  int window_n = 20;
  EvalBudget budget;
  ScoringConfig scoring;
  RLConfig rl;
  uint64_t seed = 0;
  int pair_cap = 25;  // 0 = unbounded pairwise program unions
  bool stop_on_complete = false;

  void apply_overrides(const std::map<std::string, double>& cfg);
};

struct TraceRow {
  int step = 0;
  int op_id = 0;
  uint64_t rule_hash = 0;  // 0 when the step produced no new rule
  double reward = 0;
  double global_opt = 0;
  bool stop_flag = false;
};

struct ScoredRule {
  Rule rule;
  RuleFeatures feats;
};

struct ScoredProgram {
  std::vector<int> rule_ids;  // ascending, indexes into LearnResult::rules
  double opt = 0;
  double msg_len = 0;
  int cov_pos = 0;
  int cov_neg = 0;
};

struct LearnResult {
  std::vector<ScoredRule> rules;
  std::vector<ScoredProgram> programs;  // sorted by opt desc, msg_len asc
  QTable q_table;
  int steps = 0;
  std::vector<TraceRow> trace;
  std::optional<int> solution_step;  // first step with a complete consistent program

  bool solved(size_t n_pos) const;
};

// True at the step cap, or once the optimalities of the last window_n
// generated programs have sample standard deviation <= epsilon.
bool stop_criterion(const std::vector<double>& generated_opts, int t, double epsilon,
                    int window_n, int max_steps);

// Applies the operator, abstracts the results and filters out rules already
// in `existing` (up to variable renaming).
std::vector<ScoredRule> generate_rule(const OperatorDef& op, const Rule& rule,
                                      const std::vector<ScoredRule>& existing,
                                      const Problem& problem, const LearnConfig& cfg);

// The main loop. An imported policy table seeds Q and trains the first
// model; the table is then updated in place as usual.
LearnResult run(const Problem& problem, const LearnConfig& cfg,
                const QTable* imported = nullptr);

const ScoredProgram& best_solution(const LearnResult& result);

std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace rf
