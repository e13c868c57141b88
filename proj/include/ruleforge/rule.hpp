#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ruleforge/term.hpp"

namespace rf {

// Conditional rewrite rule: lhs [when guards] -> body-items, rhs.
// Body items are either equations apply("=", {pattern, expr}) or bare
// expressions (evaluated and discarded), mirroring a sequence body.
// Examples are ground rules with empty guards and body.
struct Rule {
  TermPtr lhs;
  std::vector<TermPtr> guards;
  std::vector<TermPtr> body;
  TermPtr rhs;

  bool is_example() const { return guards.empty() && body.empty(); }
};

std::string print_rule(const Rule& r);

// Vocabulary size of a problem: distinct functors (arity > 0), constants
// and variable symbols. Fixed per problem; feeds the coding length.
struct Signature {
  int n_f = 0;
  int n_c = 0;
  int n_v = 0;
};

// --- position trees -------------------------------------------------------
//
// Depth-1 labels are L (lhs), G (guard conjunction) and Rt (body items plus
// rhs). Deeper labels index children depth-first starting at 1. Cons nodes
// have children {head, tail}; Mapping nodes {from, to}.

std::vector<RulePosition> positions(const Rule& r);

struct InvalidPosition {};

// Term at pos. The bare G position resolves to the guard list as a term,
// the bare Rt position to the rhs when the body is empty (otherwise to a
// list of body items followed by the rhs).
std::optional<TermPtr> subpart(const Rule& r, const RulePosition& pos);

enum class SpliceMode { Replace, Insert, Delete };

// Replace substitutes in place; insert shifts right siblings of a sequence
// position (guard list, body, argument lists, tuple slots, list element
// slots); delete removes a guard conjunct or body item only.
std::optional<Rule> splice(const Rule& r, const RulePosition& pos, SpliceMode mode,
                           const TermPtr& term);

// True iff the lhs outermost functor occurs as a functor in body or rhs.
bool is_recursive(const Rule& r);

// Structurally identical rule with every variable X renamed to X_<salt>.
Rule rename_apart(const Rule& r, unsigned salt);

// First-occurrence renaming to V1, V2, ... over (lhs, guards, body, rhs);
// two rules are equal up to renaming iff their canonical forms are equal.
Rule canonical(const Rule& r);

bool rules_equal(const Rule& a, const Rule& b);           // structural
bool rules_equivalent(const Rule& a, const Rule& b);      // up to renaming
uint64_t rule_hash(const Rule& r);                        // of canonical form

}  // namespace rf
