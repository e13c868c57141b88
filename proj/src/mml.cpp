#include "ruleforge/mml.hpp"

#include <cmath>
#include <numeric>

namespace rf {

namespace {

void count_term(const TermPtr& t, SymbolCounts& c) {
  switch (t->kind) {
    case TermKind::Variable:
      ++c.variables;
      return;
    case TermKind::Atom:
    case TermKind::Integer:
    case TermKind::Nil:
      ++c.constants;
      return;
    case TermKind::BKRef:
    case TermKind::PosRef:
      ++c.functors;
      return;
    case TermKind::Mapping:
      count_term(t->args[0], c);
      count_term(t->args[1], c);
      return;
    case TermKind::Cons:
    case TermKind::Tuple:
    case TermKind::Apply:
      ++c.functors;
      for (const auto& a : t->args) count_term(a, c);
      return;
  }
}

}  // namespace

SymbolCounts count_symbols(const Rule& r) {
  SymbolCounts c;
  count_term(r.lhs, c);
  for (const auto& g : r.guards) count_term(g, c);
  for (const auto& b : r.body) count_term(b, c);
  count_term(r.rhs, c);
  return c;
}

double msg_len_rule(const Rule& r, const Signature& sig) {
  SymbolCounts c = count_symbols(r);
  return c.functors * std::log2(sig.n_f + 1.0) + c.constants * std::log2(sig.n_c + 1.0) +
         c.variables * std::log2(sig.n_v + 1.0);
}

double msg_len_program(const std::vector<Rule>& prog, const Signature& sig) {
  double bits = 0;
  for (const auto& r : prog) bits += msg_len_rule(r, sig);
  return bits;
}

double msg_len_evidence(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                        const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                        const EvalBudget& budget, const Signature& sig) {
  CoverageReport rep = coverage_counts(prog, e_pos, e_neg, k, budget);
  double bits = 0;
  for (size_t i = 0; i < e_pos.size(); ++i)
    if (!rep.covered_pos.count(static_cast<int>(i))) bits += msg_len_rule(e_pos[i], sig);
  for (int i : rep.covered_neg) bits += msg_len_rule(e_neg[i], sig);
  return bits;
}

double optimality(const std::vector<Rule>& prog, const std::vector<Rule>& e_pos,
                  const std::vector<Rule>& e_neg, const std::vector<Rule>& k,
                  const EvalBudget& budget, const Signature& sig, const ScoringConfig& cfg) {
  return -cfg.beta1 * msg_len_program(prog, sig) -
         cfg.beta2 * msg_len_evidence(prog, e_pos, e_neg, k, budget, sig);
}

double global_optimality(const std::vector<double>& program_opts) {
  if (program_opts.empty()) throw EmptyPopulation{};
  return std::accumulate(program_opts.begin(), program_opts.end(), 0.0) /
         static_cast<double>(program_opts.size());
}

}  // namespace rf
