#pragma once

#include <vector>

#include "ruleforge/rewrite.hpp"
#include "ruleforge/rule.hpp"

namespace rf {

struct ScoringConfig {
  double beta1 = 1.0;
  double beta2 = 1.0;
};

// Occurrence counts over a whole rule (lhs, guards, body, rhs).
// Cons and Tuple nodes count as functors, their terminating Nil as a
// constant; Mapping nodes cost only their endpoints; BKRef is a functor.
struct SymbolCounts {
  int functors = 0;
  int constants = 0;
  int variables = 0;
};

SymbolCounts count_symbols(const Rule& r);

double msg_len_rule(const Rule& r, const Signature& sig);
double msg_len_program(const std::vector<Rule>& prog, const Signature& sig);

// Coding length of the evidence given the program: uncovered positives plus
// covered negatives, each encoded as a ground rule.
double msg_len_evidence(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                        const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                        const EvalBudget& budget, const Signature& sig);

double optimality(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                  const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                  const EvalBudget& budget, const Signature& sig, const ScoringConfig& cfg);

struct EmptyPopulation : std::runtime_error {
  EmptyPopulation() : std::runtime_error("empty program population") {}
};

double global_optimality(const std::vector<double>& program_opts);

}  // namespace rf
